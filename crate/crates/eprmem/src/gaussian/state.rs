use std::io::{BufRead, Write};

use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Relative tolerance on covariance symmetry.
const SYMMETRY_TOL: f64 = 1e-12;
/// Symplectic eigenvalues must not drop below `1 - HEISENBERG_TOL`.
const HEISENBERG_TOL: f64 = 1e-9;

/// Gaussian state of `n_modes` field modes, represented by the symmetric
/// covariance matrix of the quadratures in `(X_1, Y_1, X_2, Y_2, ...)`
/// ordering. Vacuum is the identity.
///
/// First moments are irrelevant to every quantity computed here and are
/// not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureState<T: Real> {
    n_modes: usize,
    cov: DMatrix<T>,
}

/// The standard symplectic form for the interleaved quadrature ordering:
/// block-diagonal `[[0, 1], [-1, 0]]` per mode.
pub(crate) fn symplectic_form<T: Real>(n_modes: usize) -> DMatrix<T> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for m in 0..n_modes {
        omega[(2 * m, 2 * m + 1)] = T::one();
        omega[(2 * m + 1, 2 * m)] = -T::one();
    }
    omega
}

impl<T: Real> QuadratureState<T> {
    /// Build a state from a covariance matrix, validating symmetry and the
    /// Heisenberg condition (all symplectic eigenvalues at least 1).
    pub fn new(n_modes: usize, cov: DMatrix<T>) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidParameter("n_modes must be at least 1".into()));
        }
        let dim = 2 * n_modes;
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "covariance must be {dim}x{dim} for {n_modes} modes, got {}x{}",
                cov.nrows(),
                cov.ncols()
            )));
        }
        let scale = cov
            .iter()
            .map(|x| x.abs())
            .fold(T::one(), |a, b| a.max(b));
        for i in 0..dim {
            for j in (i + 1)..dim {
                if (cov[(i, j)] - cov[(j, i)]).abs() > lit::<T>(SYMMETRY_TOL) * scale {
                    return Err(Error::Unphysical(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let state = Self { n_modes, cov };
        let min_nu = state
            .symplectic_eigenvalues()
            .into_iter()
            .fold(T::max_value().unwrap(), |a, b| a.min(b));
        if min_nu < T::one() - lit::<T>(HEISENBERG_TOL) {
            return Err(Error::Unphysical(format!(
                "Heisenberg condition violated: smallest symplectic eigenvalue {min_nu}"
            )));
        }
        Ok(state)
    }

    /// Vacuum of `n_modes` modes: identity covariance.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidParameter("n_modes must be at least 1".into()));
        }
        Ok(Self {
            n_modes,
            cov: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r >= 0`: the
    /// idealized EPR source. Amplitude quadratures are correlated and phase
    /// quadratures anti-correlated, so `Δ²(X_1 − X_2) = Δ²(Y_1 + Y_2) =
    /// 2 e^{-2r}`.
    pub fn epr(r: T) -> Result<Self> {
        if r < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "squeezing parameter must be non-negative, got {r}"
            )));
        }
        let two = lit::<T>(2.0);
        let ch = (two * r).cosh();
        let sh = (two * r).sinh();
        let mut cov = DMatrix::zeros(4, 4);
        for i in 0..4 {
            cov[(i, i)] = ch;
        }
        cov[(0, 2)] = sh;
        cov[(2, 0)] = sh;
        cov[(1, 3)] = -sh;
        cov[(3, 1)] = -sh;
        Ok(Self { n_modes: 2, cov })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn cov(&self) -> &DMatrix<T> {
        &self.cov
    }

    /// Variance of the quadrature combination `X_i - X_j`.
    pub fn var_x_minus(&self, i: usize, j: usize) -> Result<T> {
        let (i, j) = self.check_pair(i, j)?;
        let (xi, xj) = (2 * i, 2 * j);
        Ok(self.cov[(xi, xi)] + self.cov[(xj, xj)] - lit::<T>(2.0) * self.cov[(xi, xj)])
    }

    /// Variance of the quadrature combination `Y_i + Y_j`.
    pub fn var_y_plus(&self, i: usize, j: usize) -> Result<T> {
        let (i, j) = self.check_pair(i, j)?;
        let (yi, yj) = (2 * i + 1, 2 * j + 1);
        Ok(self.cov[(yi, yi)] + self.cov[(yj, yj)] + lit::<T>(2.0) * self.cov[(yi, yj)])
    }

    /// The two EPR variances `(Δ²(X_i − X_j), Δ²(Y_i + Y_j))`.
    pub fn epr_variances(&self, i: usize, j: usize) -> Result<(T, T)> {
        Ok((self.var_x_minus(i, j)?, self.var_y_plus(i, j)?))
    }

    /// Inseparability of modes `i` and `j`:
    /// `½ [Δ²(X_i − X_j) + Δ²(Y_i + Y_j)]`.
    ///
    /// A value below 2 witnesses entanglement; vacuum (and any pair of
    /// uncorrelated coherent modes) sits exactly at 2.
    pub fn duan_inseparability(&self, i: usize, j: usize) -> Result<T> {
        let (vx, vy) = self.epr_variances(i, j)?;
        Ok((vx + vy) / lit::<T>(2.0))
    }

    /// Variance of a single quadrature: `which = 0` for X, `1` for Y.
    pub fn quadrature_variance(&self, mode: usize, which: usize) -> Result<T> {
        if mode >= self.n_modes || which > 1 {
            return Err(Error::InvalidParameter(format!(
                "quadrature ({mode}, {which}) out of range for {} modes",
                self.n_modes
            )));
        }
        Ok(self.cov[(2 * mode + which, 2 * mode + which)])
    }

    /// Symplectic eigenvalues, computed as the moduli of the (purely
    /// imaginary) eigenvalue pairs of `Ω · cov`. Physical states have all
    /// values at least 1; vacuum has all exactly 1.
    pub fn symplectic_eigenvalues(&self) -> Vec<T> {
        let omega = symplectic_form::<T>(self.n_modes);
        let prod = &omega * &self.cov;
        let eig = prod.complex_eigenvalues();
        let mut moduli: Vec<T> = eig.iter().map(|z| z.modulus()).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalue moduli"));
        // Eigenvalues come in ± pairs; average each pair.
        (0..self.n_modes)
            .map(|k| (moduli[2 * k] + moduli[2 * k + 1]) / lit::<T>(2.0))
            .collect()
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        if i == j {
            return Err(Error::InvalidParameter(format!(
                "mode indices must differ, got ({i}, {j})"
            )));
        }
        if i >= self.n_modes || j >= self.n_modes {
            return Err(Error::InvalidParameter(format!(
                "mode index out of range for {} modes: ({i}, {j})",
                self.n_modes
            )));
        }
        Ok((i, j))
    }

    /// Serialize the covariance as CSV: a `n_modes,<n>` header line followed
    /// by the matrix rows in row-major order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n_modes,{}", self.n_modes)?;
        for i in 0..2 * self.n_modes {
            let row: Vec<String> = (0..2 * self.n_modes)
                .map(|j| format!("{:.17e}", self.cov[(i, j)].to_f64().unwrap_or(f64::NAN)))
                .collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Parse a covariance CSV produced by [`Self::write_csv`].
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty covariance CSV".into()))??;
        let n_modes: usize = header
            .strip_prefix("n_modes,")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| {
                Error::InvalidParameter(format!("bad covariance CSV header: {header:?}"))
            })?;
        let dim = 2 * n_modes;
        let mut cov = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            let line = lines.next().ok_or_else(|| {
                Error::InvalidParameter(format!("covariance CSV truncated at row {i}"))
            })??;
            let entries: Vec<&str> = line.split(',').collect();
            if entries.len() != dim {
                return Err(Error::InvalidParameter(format!(
                    "covariance CSV row {i} has {} entries, expected {dim}",
                    entries.len()
                )));
            }
            for (j, e) in entries.iter().enumerate() {
                let x: f64 = e.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad covariance entry at ({i}, {j}): {e:?}"))
                })?;
                cov[(i, j)] = lit::<T>(x);
            }
        }
        Self::new(n_modes, cov)
    }
}
