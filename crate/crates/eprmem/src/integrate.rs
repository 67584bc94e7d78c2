//! Quadrature helpers: adaptive Simpson on finite and infinite intervals,
//! and Gauss–Legendre nodes for fixed-order time integrals.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
///
/// Newton iteration on the Legendre recurrence; accurate to machine
/// precision for the orders used here (tens to a few hundred nodes).
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 2, "Gauss-Legendre order must be at least 2");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = lit::<T>(n as f64);
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th root.
        let mut x = lit::<T>(
            (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos(),
        );
        let mut dp = T::zero();
        for _ in 0..100 {
            // Legendre recurrence up to degree n.
            let mut p0 = T::one();
            let mut p1 = x;
            for k in 2..=n {
                let kf = lit::<T>(k as f64);
                let p2 = ((lit::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - T::one());
            let step = p1 / dp;
            x -= step;
            if step.abs() < T::default_epsilon() * lit::<T>(4.0) {
                break;
            }
        }
        let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrate `f` over `[a, b]` with an `n`-node Gauss–Legendre rule.
pub fn gauss_legendre_integrate<T: Real>(f: impl Fn(T) -> T, a: T, b: T, n: usize) -> T {
    let (nodes, weights) = gauss_legendre::<T>(n);
    let half = (b - a) / lit::<T>(2.0);
    let mid = (a + b) / lit::<T>(2.0);
    let mut acc = T::zero();
    for (x, w) in nodes.iter().zip(&weights) {
        acc += *w * f(mid + half * *x);
    }
    acc * half
}

fn simpson_recurse<T: Real>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
) -> Result<T> {
    let m = (a + b) / lit::<T>(2.0);
    let lm = (a + m) / lit::<T>(2.0);
    let rm = (m + b) / lit::<T>(2.0);
    let flm = f(lm);
    let frm = f(rm);
    let six = lit::<T>(6.0);
    let left = (m - a) / six * (fa + lit::<T>(4.0) * flm + fm);
    let right = (b - m) / six * (fm + lit::<T>(4.0) * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= lit::<T>(15.0) * tol {
        return Ok(left + right + delta / lit::<T>(15.0));
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "adaptive Simpson failed to converge on [{a}, {b}] (residual {})",
            delta.abs()
        )));
    }
    let half_tol = tol / lit::<T>(2.0);
    let l = simpson_recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?;
    let r = simpson_recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?;
    Ok(l + r)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// `tol` is treated as an absolute tolerance on the result; pass
/// `rel_tol * rough_scale` for relative control.
pub fn adaptive_simpson<T: Real>(
    f: impl Fn(T) -> T,
    a: T,
    b: T,
    tol: T,
    max_depth: usize,
) -> Result<T> {
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) / lit::<T>(2.0);
    let fm = f(m);
    let whole = (b - a) / lit::<T>(6.0) * (fa + lit::<T>(4.0) * fm + fb);
    simpson_recurse(&f, a, b, fa, fm, fb, whole, tol, max_depth)
}

/// Adaptive Simpson quadrature with relative-tolerance control: the
/// absolute tolerance is bootstrapped from a coarse first pass.
pub fn adaptive_simpson_rel<T: Real>(
    f: impl Fn(T) -> T,
    a: T,
    b: T,
    rel_tol: T,
    max_depth: usize,
) -> Result<T> {
    let coarse = gauss_legendre_integrate(&f, a, b, 16);
    let floor = lit::<T>(1e-300);
    let tol = rel_tol * coarse.abs().max(floor);
    adaptive_simpson(f, a, b, tol, max_depth)
}

/// Integrate `f` over the whole real line via the substitution
/// `x = scale * tan(theta)`, which maps Lorentzian-type integrands onto a
/// smooth bounded function of `theta`.
///
/// `scale` should be of the order of the dominant spectral width; the
/// adaptive pass resolves features on other scales.
pub fn integrate_real_line<T: Real>(
    f: impl Fn(T) -> T,
    scale: T,
    rel_tol: T,
    max_depth: usize,
) -> Result<T> {
    let eps = lit::<T>(1e-10);
    let half_pi = T::pi() / lit::<T>(2.0);
    let g = move |theta: T| {
        let t = theta.tan();
        let x = scale * t;
        f(x) * scale * (T::one() + t * t)
    };
    adaptive_simpson_rel(g, -half_pi + eps, half_pi - eps, rel_tol, max_depth)
}

fn mat_norm<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    m.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| a.max(b))
        .sqrt()
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse_mat<T: Real>(
    f: &impl Fn(T) -> DMatrix<Complex<T>>,
    a: T,
    b: T,
    fa: &DMatrix<Complex<T>>,
    fm: &DMatrix<Complex<T>>,
    fb: &DMatrix<Complex<T>>,
    whole: &DMatrix<Complex<T>>,
    tol: T,
    depth: usize,
) -> Result<DMatrix<Complex<T>>> {
    let m = (a + b) / lit::<T>(2.0);
    let flm = f((a + m) / lit::<T>(2.0));
    let frm = f((m + b) / lit::<T>(2.0));
    let four = Complex::new(lit::<T>(4.0), T::zero());
    let left = (fa + &flm * four + fm) * Complex::new((m - a) / lit::<T>(6.0), T::zero());
    let right = (fm + &frm * four + fb) * Complex::new((b - m) / lit::<T>(6.0), T::zero());
    let delta = &left + &right - whole;
    if mat_norm(&delta) <= lit::<T>(15.0) * tol {
        return Ok(&left + &right + delta * Complex::new(lit::<T>(1.0 / 15.0), T::zero()));
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "matrix quadrature failed to converge on [{a}, {b}] (residual {})",
            mat_norm(&delta)
        )));
    }
    let half_tol = tol / lit::<T>(2.0);
    let l = simpson_recurse_mat(f, a, m, fa, &flm, fm, &left, half_tol, depth - 1)?;
    let r = simpson_recurse_mat(f, m, b, fm, &frm, fb, &right, half_tol, depth - 1)?;
    Ok(l + r)
}

/// Entrywise adaptive Simpson integration of a matrix-valued function over
/// the real line, with the same `tan` substitution as
/// [`integrate_real_line`]. Error control uses the max entry norm.
pub fn integrate_real_line_matrix<T: Real>(
    f: impl Fn(T) -> DMatrix<Complex<T>>,
    scale: T,
    rel_tol: T,
    max_depth: usize,
) -> Result<DMatrix<Complex<T>>> {
    let eps = lit::<T>(1e-10);
    let half_pi = T::pi() / lit::<T>(2.0);
    let g = move |theta: T| {
        let t = theta.tan();
        let x = scale * t;
        f(x) * Complex::new(scale * (T::one() + t * t), T::zero())
    };
    let a = -half_pi + eps;
    let b = half_pi - eps;
    // Coarse pass to set the absolute tolerance.
    let (nodes, weights) = gauss_legendre::<T>(24);
    let half = (b - a) / lit::<T>(2.0);
    let mid = (a + b) / lit::<T>(2.0);
    let mut coarse: Option<DMatrix<Complex<T>>> = None;
    for (x, w) in nodes.iter().zip(&weights) {
        let term = g(mid + half * *x) * Complex::new(*w * half, T::zero());
        coarse = Some(match coarse {
            Some(acc) => acc + term,
            None => term,
        });
    }
    let coarse = coarse.expect("at least one quadrature node");
    let tol = rel_tol * mat_norm(&coarse).max(lit::<T>(1e-300));

    let fa = g(a);
    let fb = g(b);
    let m = (a + b) / lit::<T>(2.0);
    let fm = g(m);
    let four = Complex::new(lit::<T>(4.0), T::zero());
    let whole = (&fa + &fm * four + &fb) * Complex::new((b - a) / lit::<T>(6.0), T::zero());
    simpson_recurse_mat(&g, a, b, &fa, &fm, &fb, &whole, tol, max_depth)
}
