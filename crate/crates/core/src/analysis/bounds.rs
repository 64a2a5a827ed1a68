//! Worst-case expansion bounds and heuristic-error accounting.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::eval::PathCosts;
use crate::problem::{Cost, Heuristics};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("minimum gradient must be positive")]
    ZeroMinGradient,
    #[error("exponent {0} does not fit in 32 bits")]
    ExponentOverflow(u64),
}

/// `b^floor(d * max_grad / min_grad)`, exactly.
pub fn worst_case_bound(b: u64, d: u64, min_grad: Ratio<u64>, max_grad: Ratio<u64>) -> Result<BigUint, BoundError> {
    if min_grad.is_zero() {
        return Err(BoundError::ZeroMinGradient);
    }
    let ratio = max_grad / min_grad;
    let (num, den) = (
        u128::from(*ratio.numer()) * u128::from(d),
        u128::from(*ratio.denom()),
    );
    let exponent = num / den;
    let exponent = u32::try_from(exponent).map_err(|_| BoundError::ExponentOverflow(exponent as u64))?;
    Ok(BigUint::from(b).pow(exponent))
}

/// The cost and size of a solution of interest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceSolution {
    pub cost: Cost,
    pub size: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorRecord {
    /// `f_c(x) - f_c(n)`.
    pub e_c: i64,
    /// `f_s(x) - f_s(n)`.
    pub e_s: i64,
    pub reference: ReferenceSolution,
}

pub fn heuristic_error(node: PathCosts, h: &Heuristics, reference: ReferenceSolution) -> ErrorRecord {
    let f_c = node.g_cost + h.h_c;
    let f_s = node.g_size + h.h_s;
    ErrorRecord {
        e_c: reference.cost as i64 - f_c as i64,
        e_s: reference.size as i64 - f_s as i64,
        reference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn small_bounds() {
        assert_eq!(worst_case_bound(2, 3, r(1, 1), r(1, 1)).unwrap(), BigUint::from(8u32));
        assert_eq!(worst_case_bound(2, 2, r(1, 2), r(1, 1)).unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn exponent_is_floored() {
        assert_eq!(worst_case_bound(3, 1, r(2, 1), r(3, 1)).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn big_bound_matches_shifted_one() {
        let bound = worst_case_bound(4, 10, r(1, 4), r(1, 1)).unwrap();
        assert_eq!(bound, BigUint::from(1u32) << 80);
    }

    #[test]
    fn zero_min_gradient_rejected() {
        assert_eq!(
            worst_case_bound(2, 3, r(0, 1), r(1, 1)),
            Err(BoundError::ZeroMinGradient)
        );
    }

    #[test]
    fn root_error_with_blind_heuristics() {
        let rec = heuristic_error(
            PathCosts::default(),
            &Heuristics::ZERO,
            ReferenceSolution { cost: 9, size: 2 },
        );
        assert_eq!((rec.e_c, rec.e_s), (9, 2));
    }
}
