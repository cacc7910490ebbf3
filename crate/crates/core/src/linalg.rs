//! Dense complex linear algebra helpers shared by all modules.
//!
//! Everything is `f64`-complex and dense; the dimensions in this crate stay
//! small (at most a few hundred), so nalgebra's pure-Rust factorizations are
//! plenty.

use crate::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Shorthand for a complex number.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Shorthand for a real complex number.
#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Hermitian part `(A + A†)/2`.
pub fn hermitize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()) * cr(0.5)
}

/// Frobenius distance from Hermiticity.
pub fn hermiticity_deviation(a: &CMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

pub fn is_hermitian(a: &CMatrix, tol: f64) -> bool {
    hermiticity_deviation(a) <= tol
}

pub fn trace(a: &CMatrix) -> C64 {
    a.diagonal().sum()
}

/// Re Tr(A), for operators known to have a real trace.
pub fn trace_re(a: &CMatrix) -> f64 {
    trace(a).re
}

/// Outer product |v⟩⟨w|.
pub fn outer(v: &CVector, w: &CVector) -> CMatrix {
    v * w.adjoint()
}

/// Projector |v⟩⟨v| for a unit vector.
pub fn projector(v: &CVector) -> CMatrix {
    outer(v, v)
}

pub fn inner(v: &CVector, w: &CVector) -> C64 {
    v.dotc(w)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns, in the
/// same order as the eigenvalues.
pub fn herm_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let eig = hermitize(a).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

pub fn min_eigenvalue(a: &CMatrix) -> f64 {
    let (vals, _) = herm_eigen(a);
    *vals.last().unwrap()
}

pub fn max_eigenvalue(a: &CMatrix) -> f64 {
    let (vals, _) = herm_eigen(a);
    vals[0]
}

/// Numeric rank of a Hermitian matrix: eigenvalues above `rel_tol * max|λ|`.
pub fn herm_rank(a: &CMatrix, rel_tol: f64) -> usize {
    let (vals, _) = herm_eigen(a);
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    vals.iter().filter(|v| v.abs() > rel_tol * scale).count()
}

/// Apply a real function to the spectrum of a Hermitian matrix.
pub fn herm_fn(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, vecs) = herm_eigen(a);
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| cr(f(v))),
    ));
    &vecs * d * vecs.adjoint()
}

/// Square root of a positive semidefinite matrix.
///
/// Small negative eigenvalues (down to `-tol` relative to the largest) are
/// clipped to zero; anything below that is a positivity error.
pub fn psd_sqrt(a: &CMatrix, tol: f64) -> Result<CMatrix> {
    let (vals, vecs) = herm_eigen(a);
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    if let Some(&min) = vals.last() {
        if min < -tol * scale {
            return Err(Error::NotPositive(min));
        }
    }
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| cr(v.max(0.0).sqrt())),
    ));
    Ok(&vecs * d * vecs.adjoint())
}

/// Moore-Penrose inverse of a Hermitian matrix restricted to its support.
pub fn pinv_on_support(a: &CMatrix, rel_tol: f64) -> CMatrix {
    let (vals, vecs) = herm_eigen(a);
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| {
            if scale > 0.0 && v.abs() > rel_tol * scale {
                cr(1.0 / v)
            } else {
                cr(0.0)
            }
        }),
    ));
    &vecs * d * vecs.adjoint()
}

/// Trace norm Tr|A| (sum of singular values).
pub fn trace_norm(a: &CMatrix) -> f64 {
    a.clone().svd(false, false).singular_values.iter().sum()
}

pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    (u.adjoint() * u - identity(u.nrows())).norm()
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    u.is_square() && unitarity_deviation(u) <= tol
}

/// Eigenphases and eigenvectors of a unitary matrix.
///
/// A unitary `W` is normal, so it is diagonalized by simultaneously
/// diagonalizing the commuting Hermitian pair `(W + W†)/2` and `(W − W†)/2i`.
/// Phases are returned in `(-π, π]`, sorted ascending, with unit eigenvectors
/// as the second element of every pair.
pub fn unitary_eigenphases(w: &CMatrix, tol: f64) -> Result<Vec<(f64, CVector)>> {
    if !w.is_square() {
        return Err(Error::NotSquare(w.nrows(), w.ncols()));
    }
    let dev = unitarity_deviation(w);
    if dev > tol.max(1e-8) {
        return Err(Error::NotUnitary(dev));
    }
    let n = w.nrows();
    let h_re = hermitize(w);
    let h_im = (w - w.adjoint()) * c(0.0, -0.5);
    let (vals, mut vecs) = herm_eigen(&h_re);

    // Rotate within (near-)degenerate eigenspaces of the real part so the
    // imaginary part becomes diagonal there too.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (vals[end] - vals[start]).abs() < 1e-8 {
            end += 1;
        }
        if end - start > 1 {
            let block = vecs.columns(start, end - start).into_owned();
            let sub = block.adjoint() * &h_im * &block;
            let (_, rot) = herm_eigen(&sub);
            let rotated = block * rot;
            for k in 0..(end - start) {
                vecs.set_column(start + k, &rotated.column(k));
            }
        }
        start = end;
    }

    let mut out: Vec<(f64, CVector)> = (0..n)
        .map(|k| {
            let v = vecs.column(k).into_owned();
            let re = inner(&v, &(&h_re * &v)).re;
            let im = inner(&v, &(&h_im * &v)).re;
            (im.atan2(re), v)
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));

    for (theta, v) in &out {
        let residual = (w * v - v * c(theta.cos(), theta.sin())).norm();
        if residual > 1e-7 {
            return Err(Error::InvalidArgument(format!(
                "unitary eigenphase residual {residual:.3e}"
            )));
        }
    }
    Ok(out)
}

/// Orthonormal basis of the span of the given vectors (modified Gram-Schmidt).
pub fn orthonormalize(vectors: &[CVector], tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let coeff = inner(b, &w);
            w -= b * coeff;
        }
        // second pass for numerical orthogonality
        for b in &basis {
            let coeff = inner(b, &w);
            w -= b * coeff;
        }
        let norm = w.norm();
        if norm > tol {
            basis.push(w / cr(norm));
        }
    }
    basis
}

/// Columns spanning the eigenspaces of a Hermitian projector-sum with
/// eigenvalue above `threshold`.
pub fn eigenspace_above(a: &CMatrix, threshold: f64) -> Vec<CVector> {
    let (vals, vecs) = herm_eigen(a);
    vals.iter()
        .enumerate()
        .filter(|(_, &v)| v > threshold)
        .map(|(k, _)| vecs.column(k).into_owned())
        .collect()
}
