use nalgebra::DMatrix;

use super::state::{symplectic_form, QuadratureState};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Tolerance on `S Ω Sᵀ = Ω` and `det S = 1`.
const SYMPLECTIC_TOL: f64 = 1e-10;

/// Linear-optics transform acting on quadratures: a real `2n × 2n`
/// symplectic matrix. Covers phase plates, beamsplitters and squeezers of
/// the source and readout chains.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticTransform<T: Real> {
    matrix: DMatrix<T>,
}

impl<T: Real> SymplecticTransform<T> {
    /// Validate and wrap an explicit symplectic matrix.
    pub fn new(matrix: DMatrix<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() % 2 != 0 || matrix.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "symplectic matrix must be square with even dimension, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let n_modes = matrix.nrows() / 2;
        let omega = symplectic_form::<T>(n_modes);
        let residual = &matrix * &omega * matrix.transpose() - &omega;
        let max_res = residual
            .iter()
            .map(|x| x.abs())
            .fold(T::zero(), |a, b| a.max(b));
        if max_res > lit::<T>(SYMPLECTIC_TOL) {
            return Err(Error::Unphysical(format!(
                "matrix does not preserve the symplectic form (residual {max_res})"
            )));
        }
        let det = matrix.clone().lu().determinant();
        if (det - T::one()).abs() > lit::<T>(SYMPLECTIC_TOL) {
            return Err(Error::Unphysical(format!(
                "symplectic matrix must have unit determinant, got {det}"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    /// Phase-space rotation of a single mode by `phi` (the action of a
    /// phase plate): `X' = cos φ X − sin φ Y`, `Y' = sin φ X + cos φ Y`,
    /// i.e. `a → e^{iφ} a`.
    pub fn phase_rotation(n_modes: usize, mode: usize, phi: T) -> Self {
        assert!(mode < n_modes, "mode index out of range");
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        let (x, y) = (2 * mode, 2 * mode + 1);
        m[(x, x)] = phi.cos();
        m[(x, y)] = -phi.sin();
        m[(y, x)] = phi.sin();
        m[(y, y)] = phi.cos();
        Self { matrix: m }
    }

    /// Lossless two-mode mixer: `a_i' = cos θ a_i + sin θ a_j`,
    /// `a_j' = −sin θ a_i + cos θ a_j`. `θ = ±π/4` is a balanced (50:50)
    /// beamsplitter or half-wave-plate mode mixing.
    pub fn mode_mixer(n_modes: usize, i: usize, j: usize, theta: T) -> Self {
        assert!(i < n_modes && j < n_modes && i != j, "bad mixer mode pair");
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        let (c, s) = (theta.cos(), theta.sin());
        for q in 0..2 {
            let (qi, qj) = (2 * i + q, 2 * j + q);
            m[(qi, qi)] = c;
            m[(qi, qj)] = s;
            m[(qj, qi)] = -s;
            m[(qj, qj)] = c;
        }
        Self { matrix: m }
    }

    /// Single-mode squeezer: `X → e^{-r} X`, `Y → e^{r} Y`.
    pub fn single_mode_squeezer(n_modes: usize, mode: usize, r: T) -> Self {
        assert!(mode < n_modes, "mode index out of range");
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        m[(2 * mode, 2 * mode)] = (-r).exp();
        m[(2 * mode + 1, 2 * mode + 1)] = r.exp();
        Self { matrix: m }
    }

    /// Composition: apply `first`, then `self`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if self.matrix.nrows() != first.matrix.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.matrix.nrows(),
                self.matrix.ncols(),
                first.matrix.nrows(),
                first.matrix.ncols()
            )));
        }
        Ok(Self {
            matrix: &self.matrix * &first.matrix,
        })
    }

    /// Symplectic inverse `S⁻¹ = −Ω Sᵀ Ω`, exact up to rounding.
    pub fn inverse(&self) -> Self {
        let omega = symplectic_form::<T>(self.matrix.nrows() / 2);
        Self {
            matrix: -(&omega * self.matrix.transpose() * &omega),
        }
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// Transform a state: `cov' = S cov Sᵀ` (the result is re-validated).
    pub fn apply(&self, state: &QuadratureState<T>) -> Result<QuadratureState<T>> {
        if self.n_modes() != state.n_modes() {
            return Err(Error::DimensionMismatch(format!(
                "transform acts on {} modes but state has {}",
                self.n_modes(),
                state.n_modes()
            )));
        }
        let cov = &self.matrix * state.cov() * self.matrix.transpose();
        // Symmetrize away rounding before validation.
        let cov = (&cov + cov.transpose()) / lit::<T>(2.0);
        QuadratureState::new(state.n_modes(), cov)
    }
}

/// The two-mode basis change of the readout measurement chain: balanced
/// mixing of the outgoing modes followed by a quarter-wave (π/2) rotation
/// of the second output, so that
///
/// ```text
/// X_1' = (X_1 − X_2)/√2      Y_1' = (Y_1 − Y_2)/√2
/// X_2' = (Y_1 + Y_2)/√2      Y_2' = −(X_1 + X_2)/√2
/// ```
///
/// Applied to an EPR pair both output modes are squeezed on the same
/// (X) quadrature, which is what lets a single local oscillator measure
/// both EPR variances simultaneously. Sign conventions of the individual
/// plates are internal; only the composite above is contractual.
pub fn readout_basis_rotation<T: Real>() -> SymplecticTransform<T> {
    let quarter = T::pi() / lit::<T>(4.0);
    let half = T::pi() / lit::<T>(2.0);
    let mixer = SymplecticTransform::mode_mixer(2, 0, 1, -quarter);
    let plate = SymplecticTransform::phase_rotation(2, 1, -half);
    plate
        .compose(&mixer)
        .expect("fixed-size composition cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    #[test]
    fn identity_leaves_state_unchanged() {
        let s = QuadratureState::epr(0.3f64).unwrap();
        let id = SymplecticTransform::identity(2);
        let out = id.apply(&s).unwrap();
        assert_eq!(out.cov(), s.cov());
    }

    #[test]
    fn balanced_mixer_decorrelates_epr() {
        // Direct matrix-product oracle: a 50:50 mixer turns the EPR pair
        // into two independent single-mode squeezed states with variances
        // e^{∓2r} on orthogonal quadratures.
        let r = 0.4f64;
        let s = QuadratureState::epr(r).unwrap();
        let bs = SymplecticTransform::mode_mixer(2, 0, 1, -std::f64::consts::FRAC_PI_4);
        let out = bs.apply(&s).unwrap();
        let c = out.cov();
        assert_relative_eq!(c[(0, 0)], (-2.0 * r).exp(), epsilon = 1e-12);
        assert_relative_eq!(c[(1, 1)], (2.0 * r).exp(), epsilon = 1e-12);
        assert_relative_eq!(c[(2, 2)], (2.0 * r).exp(), epsilon = 1e-12);
        assert_relative_eq!(c[(3, 3)], (-2.0 * r).exp(), epsilon = 1e-12);
        for i in 0..2 {
            for j in 2..4 {
                assert_relative_eq!(c[(i, j)], 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn transforms_preserve_symplectic_eigenvalues() {
        let s = QuadratureState::epr(0.9f64).unwrap();
        let t = SymplecticTransform::phase_rotation(2, 0, 0.7)
            .compose(&SymplecticTransform::mode_mixer(2, 0, 1, 0.3))
            .unwrap()
            .compose(&SymplecticTransform::single_mode_squeezer(2, 1, 0.5))
            .unwrap();
        SymplecticTransform::new(t.matrix().clone()).unwrap();
        let before = s.symplectic_eigenvalues();
        let after = t.apply(&s).unwrap().symplectic_eigenvalues();
        for (a, b) in before.iter().zip(&after) {
            assert_relative_eq!(a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn vacuum_stays_vacuum_eigenvalues() {
        let v = QuadratureState::<f64>::vacuum(2).unwrap();
        let t = SymplecticTransform::single_mode_squeezer(2, 0, 1.0);
        let out = t.apply(&v).unwrap();
        for nu in out.symplectic_eigenvalues() {
            assert_relative_eq!(nu, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn readout_rotation_squeezes_both_modes_on_x() {
        let r = 0.6f64;
        let s = QuadratureState::epr(r).unwrap();
        let rot = readout_basis_rotation::<f64>();
        let out = rot.apply(&s).unwrap();
        let expect = (-2.0 * r).exp();
        assert_relative_eq!(out.quadrature_variance(0, 0).unwrap(), expect, epsilon = 1e-12);
        assert_relative_eq!(out.quadrature_variance(1, 0).unwrap(), expect, epsilon = 1e-12);
        // Var(X_1') is half the EPR variance of the input.
        assert_relative_eq!(
            out.quadrature_variance(0, 0).unwrap(),
            s.var_x_minus(0, 1).unwrap() / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn readout_rotation_fixes_vacuum() {
        let v = QuadratureState::<f64>::vacuum(2).unwrap();
        let out = readout_basis_rotation::<f64>().apply(&v).unwrap();
        assert!(max_abs_diff(out.cov(), v.cov()) < 1e-12);
    }

    #[test]
    fn readout_rotation_round_trips() {
        let rot = readout_basis_rotation::<f64>();
        let s = QuadratureState::epr(0.8f64).unwrap();
        let twice = rot.apply(&rot.apply(&s).unwrap()).unwrap();
        let inv = rot.inverse();
        let back = inv.apply(&inv.apply(&twice).unwrap()).unwrap();
        assert!(max_abs_diff(back.cov(), s.cov()) < 1e-10);
    }

    #[test]
    fn readout_rotation_matrix_is_the_documented_composite() {
        let rot = readout_basis_rotation::<f64>();
        let h = 1.0 / 2.0f64.sqrt();
        #[rustfmt::skip]
        let expect = DMatrix::from_row_slice(4, 4, &[
             h,  0.0, -h,  0.0,
             0.0,  h,  0.0, -h,
             0.0,  h,  0.0,  h,
            -h,  0.0, -h,  0.0,
        ]);
        assert!(max_abs_diff(rot.matrix(), &expect) < 1e-15);
    }

    #[test]
    fn non_symplectic_matrix_rejected() {
        let m = DMatrix::from_diagonal_element(4, 4, 1.1f64);
        assert!(SymplecticTransform::new(m).is_err());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = QuadratureState::<f64>::vacuum(3).unwrap();
        let t = SymplecticTransform::identity(2);
        assert!(t.apply(&s).is_err());
    }
}
