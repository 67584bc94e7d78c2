use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Entanglement of formation (in ebits) of a symmetric two-mode Gaussian
/// state with inseparability `i` (see
/// [`QuadratureState::duan_inseparability`](super::QuadratureState::duan_inseparability)).
///
/// With `v = i/2` the per-quadrature normalized EPR variance:
/// separable (`v >= 1`) states have zero EoF; otherwise
///
/// ```text
/// EoF = c₊ log₂ c₊ − c₋ log₂ c₋,   c± = (v^{-1/2} ± v^{1/2})² / 4.
/// ```
///
/// For a two-mode squeezed vacuum (`i = 2 e^{-2r}`) this reduces to the
/// familiar `cosh²r log₂ cosh²r − sinh²r log₂ sinh²r`, which serves as the
/// independent closed-form check in the tests.
pub fn eof_symmetric<T: Real>(i: T) -> Result<T> {
    if i <= T::zero() {
        return Err(Error::InvalidParameter(format!(
            "inseparability must be positive, got {i}"
        )));
    }
    let v = i / lit::<T>(2.0);
    // Guard the separable boundary: log of a vanishing c₋ is avoided by
    // returning exactly 0 in a machine-width band around v = 1.
    if v >= T::one() - lit::<T>(1e-12) {
        return Ok(T::zero());
    }
    let sqrt_v = v.sqrt();
    let c_plus = (T::one() / sqrt_v + sqrt_v).powi(2) / lit::<T>(4.0);
    let c_minus = (T::one() / sqrt_v - sqrt_v).powi(2) / lit::<T>(4.0);
    let ln2 = lit::<T>(std::f64::consts::LN_2);
    Ok((c_plus * c_plus.ln() - c_minus * c_minus.ln()) / ln2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Closed-form EoF of a two-mode squeezed vacuum with squeezing `r`.
    fn tmsv_eof(r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let ch2 = r.cosh().powi(2);
        let sh2 = r.sinh().powi(2);
        ch2 * ch2.log2() - sh2 * sh2.log2()
    }

    #[test]
    fn separable_boundary_is_zero() {
        assert_eq!(eof_symmetric(2.0f64).unwrap(), 0.0);
        assert_eq!(eof_symmetric(2.5f64).unwrap(), 0.0);
        // Just inside the guard band.
        assert_eq!(eof_symmetric(2.0f64 - 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_positive_inseparability() {
        assert!(eof_symmetric(0.0f64).is_err());
        assert!(eof_symmetric(-1.0f64).is_err());
    }

    #[test]
    fn unit_inseparability_value() {
        // v = 1/2 gives c₊ = 9/8 and c₋ = 1/8 exactly.
        let v: f64 = 0.5;
        let c_plus = (1.0 / v.sqrt() + v.sqrt()).powi(2) / 4.0;
        let c_minus = (1.0 / v.sqrt() - v.sqrt()).powi(2) / 4.0;
        assert_relative_eq!(c_plus, 1.125, epsilon = 1e-15);
        assert_relative_eq!(c_minus, 0.125, epsilon = 1e-15);
        let expect = 1.125f64 * 1.125f64.log2() - 0.125 * 0.125f64.log2();
        assert_relative_eq!(expect, 0.566_165_626_622_601_4, epsilon = 1e-12);
        assert_relative_eq!(eof_symmetric(1.0f64).unwrap(), expect, epsilon = 1e-14);
    }

    #[test]
    fn matches_two_mode_squeezed_vacuum_closed_form() {
        for r in [0.05f64, 0.2, 0.5, 1.0, 2.0, 3.5] {
            let i = 2.0 * (-2.0 * r).exp();
            assert_relative_eq!(
                eof_symmetric(i).unwrap(),
                tmsv_eof(r),
                epsilon = 1e-10,
                max_relative = 1e-10
            );
        }
        // Spot value quoted to three decimals for r = 1.
        assert_relative_eq!(tmsv_eof(1.0), 2.337, epsilon = 5e-4);
    }

    #[test]
    fn strictly_decreasing_below_two() {
        let mut prev = eof_symmetric(0.01f64).unwrap();
        let mut i = 0.01f64;
        while i < 1.999 {
            i += 0.007;
            let cur = eof_symmetric(i.min(1.999)).unwrap();
            assert!(cur < prev, "EoF not strictly decreasing at i = {i}");
            prev = cur;
        }
    }

    #[test]
    fn continuous_at_the_boundary() {
        let just_inside = eof_symmetric(2.0f64 - 1e-9).unwrap();
        assert!(just_inside.abs() < 1e-7);
    }
}
