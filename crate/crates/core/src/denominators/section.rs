//! `𝔇_γ ∩ O_K` computed from the denominator ideal of `(γ)` in `O_{K(γ)}`,
//! without going through `X` or `Y`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::compute_xy;
use crate::arith::common_denominator;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FractionalIdeal, PrimeIdeal, Subfield};
use crate::linalg::{integer_left_kernel, Lattice, ZMat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorIdealSection {
    /// `𝔇_γ ∩ O_K`.
    pub ideal: FractionalIdeal,
    pub factorization: Vec<(PrimeIdeal, i64)>,
    pub radical: FractionalIdeal,
    /// `∏_{P ∈ Y(K, γ)} P`.
    pub y_product: FractionalIdeal,
}

impl DenominatorIdealSection {
    pub fn radical_matches(&self) -> bool {
        self.radical == self.y_product
    }
}

/// `{a ∈ O_K : aγ integral}`. With `E = K(γ)` this is `B ∩ O_K` where
/// `B = O_E ∩ γ^{-1} O_E` is the denominator ideal of `(γ)`.
pub fn section_ideal(k: &Subfield, gamma: &FieldElement) -> Result<FractionalIdeal> {
    let m = k.ambient();
    let e = Subfield::generated_by(m, &[k.generator().clone(), gamma.clone()])?;
    let ef = e.field();
    let ge = e
        .from_ambient(gamma)
        .ok_or_else(|| Error::invalid("γ is not in K(γ)"))?;
    if ge.is_zero() {
        return Ok(FractionalIdeal::unit(k.field()));
    }
    let inv = FractionalIdeal::principal(ef, &ef.inv(&ge)?)?;
    let b = FractionalIdeal::unit(ef).intersect(&inv);
    let kd = k.degree();
    let w: Vec<Vec<BigRational>> = k
        .field()
        .integral_basis()
        .iter()
        .map(|r| {
            let a = k.map_into(&e, &k.field().element(r.clone()))?;
            Ok(ef.to_integral_coords(&a))
        })
        .collect::<Result<_>>()?;
    let bm = b.lattice().basis();
    let den = common_denominator(w.iter().chain(&bm).flatten());
    let dq = BigRational::from_integer(den);
    let mut rows: ZMat = Vec::with_capacity(w.len() + bm.len());
    for r in &w {
        rows.push(r.iter().map(|x| (x * &dq).to_integer()).collect());
    }
    for r in &bm {
        rows.push(r.iter().map(|x| -(x * &dq).to_integer()).collect());
    }
    let kernel: ZMat = integer_left_kernel(&rows)
        .into_iter()
        .map(|v| v[..kd].to_vec())
        .collect();
    let lat = Lattice::from_integer_rows(&kernel, BigInt::from(1), kd)
        .ok_or_else(|| Error::invalid("section is not of full rank"))?;
    Ok(FractionalIdeal::from_lattice(lat))
}

pub fn denominator_section(k: &Subfield, gamma: &FieldElement) -> Result<DenominatorIdealSection> {
    let ideal = section_ideal(k, gamma)?;
    let kf = k.field();
    let factorization = ideal.factor(kf)?;
    let radical = ideal.radical(kf)?;
    let y_product = compute_xy(k, gamma)?.y_product();
    Ok(DenominatorIdealSection {
        ideal,
        factorization,
        radical,
        y_product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denominators::GammaContext;

    #[test]
    fn sections_of_gaussian_examples() {
        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/(2+x)").unwrap();
        let q = c.rationals();
        let s = denominator_section(&q, c.gamma()).unwrap();
        assert_eq!(s.ideal, FractionalIdeal::principal(q.field(), &q.field().from_int(5)).unwrap());
        assert!(s.radical_matches());

        let c = GammaContext::parse("Q[x]/(x^2+1)", "x").unwrap();
        let s = denominator_section(&q, c.gamma()).unwrap();
        assert!(s.ideal.is_unit());
        assert!(s.radical_matches());

        let c = GammaContext::parse("Q[x]/(x^2+1)", "1/(60+15*x)").unwrap();
        let k = c.parse_subfield("x").unwrap();
        let s = denominator_section(&k, c.gamma()).unwrap();
        let expected = FractionalIdeal::principal(k.field(), &k.field().parse_element("3*(2+x)*(2-x)*(4+x)").unwrap()).unwrap();
        assert_eq!(s.radical, expected);
        assert!(s.radical_matches());
        let s = denominator_section(&q, c.gamma()).unwrap();
        assert!(s.radical_matches());
    }
}
