//! Naive intersection lengths and the length quotients that compute
//! intersection multiplicities from small MCM modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{GroebnerBasis, Poly, PolyRing};

/// dim_κ ambient/(A + B).
pub fn tensor_length(a: &[Poly], b: &[Poly], ambient: &PolyRing) -> Result<u64> {
    let gens: Vec<Poly> = a.iter().chain(b).cloned().collect();
    let gb = GroebnerBasis::compute(ambient, &gens);
    gb.standard_monomials()
        .map(|m| m.len() as u64)
        .ok_or(Error::NotArtinian)
}

/// Exact rational with an integrality flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalReport {
    pub value: BigRational,
    pub integral: bool,
}

impl RationalReport {
    fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let value = BigRational::new(num, den);
        let integral = value.is_integer();
        Ok(RationalReport { value, integral })
    }
}

/// ℓ(M ⊗ N) / (ℓ(M_𝔭) · ℓ(N_𝔮)).
pub fn chi_from_mcm_lengths(tensor_len: u64, len_m: u64, len_n: u64) -> Result<RationalReport> {
    RationalReport::new(
        BigInt::from(tensor_len),
        BigInt::from(len_m) * BigInt::from(len_n),
    )
}

/// ℓ(Q_𝔭) for Q free of the given rank over the Noether normalization, with
/// frac_deg the degree of the fraction field extension.
pub fn localization_length_free_mcm(rank: u64, frac_deg: u64) -> Result<RationalReport> {
    RationalReport::new(BigInt::from(rank), BigInt::from(frac_deg))
}

/// Tor_i(M, N) = 0 for i above this bound.
pub fn tor_vanishing_bound(pd_m: u64, pd_n: u64, d: u64) -> u64 {
    (pd_m + pd_n).saturating_sub(d)
}

/// Full pipeline for a free MCM on one side: the naive length divided by the
/// localized length of the MCM and the user-supplied length of the other side.
pub fn chi_free_mcm(
    tensor_len: u64,
    rank: u64,
    frac_deg: u64,
    len_n: u64,
) -> Result<RationalReport> {
    let loc = localization_length_free_mcm(rank, frac_deg)?;
    if loc.value.is_zero() || len_n == 0 {
        return Err(Error::ZeroDenominator);
    }
    let value =
        BigRational::from_integer(BigInt::from(tensor_len)) / (loc.value * BigInt::from(len_n));
    let integral = value.is_integer();
    Ok(RationalReport { value, integral })
}

impl RationalReport {
    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::ScalarField;
    use crate::poly::MonomialOrder;

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(
            Arc::new(ScalarField::prime(7).unwrap()),
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::grevlex(names.len()),
        )
    }

    fn ideal(r: &PolyRing, gens: &[&str]) -> Vec<Poly> {
        gens.iter().map(|g| r.parse(g).unwrap()).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tensor_lengths() {
        let r = ring(&["x", "y"]);
        assert_eq!(
            tensor_length(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &r).unwrap(),
            1
        );
        assert_eq!(
            tensor_length(&ideal(&r, &["y - x^2"]), &ideal(&r, &["y"]), &r).unwrap(),
            2
        );
        assert_eq!(
            tensor_length(&ideal(&r, &["y"]), &ideal(&r, &["y - x^2"]), &r).unwrap(),
            2
        );
        assert_eq!(
            tensor_length(&ideal(&r, &["x"]), &ideal(&r, &["x^2"]), &r),
            Err(Error::NotArtinian)
        );
        let r4 = ring(&["x", "y", "z", "w"]);
        assert_eq!(
            tensor_length(&ideal(&r4, &["x", "y"]), &ideal(&r4, &["z", "w"]), &r4).unwrap(),
            1
        );
    }

    #[test]
    fn tangency_length_by_direct_count() {
        // basis of κ[x,y]/(y - x^k, y) is 1, x, …, x^{k-1}
        let r = ring(&["x", "y"]);
        for k in 1..8u32 {
            let a = ideal(&r, &[&format!("y - x^{k}")]);
            assert_eq!(tensor_length(&a, &ideal(&r, &["y"]), &r).unwrap(), k as u64);
        }
    }

    #[test]
    fn chi_quotients() {
        assert_eq!(chi_from_mcm_lengths(1, 1, 1).unwrap().value, rat(1, 1));
        assert_eq!(chi_from_mcm_lengths(6, 3, 2).unwrap().value, rat(1, 1));
        let r = chi_from_mcm_lengths(5, 2, 1).unwrap();
        assert_eq!(r.value, rat(5, 2));
        assert!(!r.integral);
        assert_eq!(chi_from_mcm_lengths(4, 0, 1), Err(Error::ZeroDenominator));
        for l in 0..20 {
            assert_eq!(
                chi_from_mcm_lengths(l, 1, 1).unwrap().value,
                rat(l as i64, 1)
            );
        }
    }

    #[test]
    fn localized_lengths() {
        assert!(localization_length_free_mcm(3, 3).unwrap().is_one());
        assert!(localization_length_free_mcm(5, 5).unwrap().is_one());
        assert_eq!(localization_length_free_mcm(6, 3).unwrap().value, rat(2, 1));
        assert!(!localization_length_free_mcm(2, 3).unwrap().integral);
        assert_eq!(
            localization_length_free_mcm(3, 0),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn tor_bounds() {
        assert_eq!(tor_vanishing_bound(2, 1, 3), 0);
        assert_eq!(tor_vanishing_bound(0, 2, 4), 0);
        assert_eq!(tor_vanishing_bound(2, 3, 4), 1);
    }

    #[test]
    fn transverse_pipeline() {
        let r = ring(&["x", "y", "z", "w"]);
        let len = tensor_length(&ideal(&r, &["x", "y"]), &ideal(&r, &["z", "w"]), &r).unwrap();
        assert!(chi_free_mcm(len, 1, 1, 1).unwrap().is_one());
    }
}
