//! Complex-operator foundations: Hermitian operators with tolerance
//! metadata, POVM validation, permutation-symmetric projectors, supports and
//! partial traces.

use crate::linalg::{
    self, cr, eigenspace_above, herm_eigen, hermitize, identity, CMatrix, CVector,
};
use crate::{Error, Result};

/// Default numeric tolerance used throughout the crate (dimensionless,
/// relative where a scale exists).
pub const DEFAULT_TOL: f64 = 1e-9;

/// A Hermitian operator together with the tolerance it was validated at.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    dim: usize,
    entries: CMatrix,
    tol: f64,
}

impl HermitianOperator {
    /// Validate and wrap a matrix. Fails if it is not square or deviates
    /// from Hermiticity by more than `tol` (Frobenius, relative to norm).
    pub fn new(entries: CMatrix, tol: f64) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare(entries.nrows(), entries.ncols()));
        }
        let scale = entries.norm().max(1.0);
        let dev = linalg::hermiticity_deviation(&entries);
        if dev > tol * scale {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self {
            dim: entries.nrows(),
            entries: hermitize(&entries),
            tol,
        })
    }

    /// Wrap a matrix that is Hermitian by construction.
    pub fn from_hermitian_parts(entries: CMatrix, tol: f64) -> Self {
        debug_assert!(linalg::hermiticity_deviation(&entries) <= 1e-8 * entries.norm().max(1.0));
        Self {
            dim: entries.nrows(),
            entries: hermitize(&entries),
            tol,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_hermitian_parts(identity(dim), DEFAULT_TOL)
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_hermitian_parts(CMatrix::zeros(dim, dim), DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        linalg::trace_re(&self.entries)
    }

    /// Eigenvalues sorted descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eigen(&self.entries).0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().unwrap()
    }

    /// Numeric rank at the operator's own tolerance.
    pub fn rank(&self) -> usize {
        linalg::herm_rank(&self.entries, self.tol)
    }

    /// Checks positive semidefiniteness within the operator tolerance.
    pub fn is_positive(&self) -> bool {
        let scale = self.entries.norm().max(1.0);
        self.min_eigenvalue() >= -self.tol * scale
    }

    /// ‖P² − P‖, the defect from being a projector.
    pub fn projector_defect(&self) -> f64 {
        (&self.entries * &self.entries - &self.entries).norm()
    }
}

/// A positive operator valued measure: an ordered collection of effects on a
/// common dimension. Construction does not validate; see [`validate_povm`].
#[derive(Debug, Clone)]
pub struct Povm {
    pub dim: usize,
    pub effects: Vec<HermitianOperator>,
}

impl Povm {
    pub fn new(dim: usize, effects: Vec<HermitianOperator>) -> Self {
        Self { dim, effects }
    }

    pub fn n_outcomes(&self) -> usize {
        self.effects.len()
    }

    /// Outcome probabilities Tr(Eᵢ ρ) for a state.
    pub fn probabilities(&self, rho: &CMatrix) -> Vec<f64> {
        self.effects
            .iter()
            .map(|e| linalg::trace_re(&(e.matrix() * rho)))
            .collect()
    }
}

/// Validation report for a POVM: per-effect minimum eigenvalues and the norm
/// deviation of the effect sum from identity.
#[derive(Debug, Clone)]
pub struct PovmValidation {
    pub min_eigenvalues: Vec<f64>,
    pub sum_deviation: f64,
    pub tol: f64,
}

impl PovmValidation {
    pub fn is_valid(&self) -> bool {
        self.min_eigenvalues.iter().all(|&m| m >= -self.tol) && self.sum_deviation <= self.tol
    }
}

/// Report-only POVM check: effect positivity and completeness.
pub fn validate_povm(p: &Povm) -> PovmValidation {
    let tol = p
        .effects
        .iter()
        .map(|e| e.tol())
        .fold(DEFAULT_TOL, f64::max);
    let min_eigenvalues = p.effects.iter().map(|e| e.min_eigenvalue()).collect();
    let mut sum = CMatrix::zeros(p.dim, p.dim);
    for e in &p.effects {
        sum += e.matrix();
    }
    // trace norm, so a stray identity reports a deviation of exactly dim
    let sum_deviation = crate::linalg::trace_norm(&(sum - identity(p.dim)));
    PovmValidation {
        min_eigenvalues,
        sum_deviation,
        tol: tol * (p.dim as f64) * 10.0,
    }
}

// ---------------------------------------------------------------------------
// multi-index helpers

/// Decompose a flat index into per-party digits, party 0 most significant.
fn digits_of(mut index: usize, d: usize, parties: usize) -> Vec<usize> {
    let mut digits = vec![0usize; parties];
    for k in (0..parties).rev() {
        digits[k] = index % d;
        index /= d;
    }
    digits
}

fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Operator permuting the listed subsystems of `total` parties of local
/// dimension `d`: subsystem `subsystems[i]` receives the content of
/// `subsystems[perm[i]]`.
pub fn permutation_operator(d: usize, total: usize, subsystems: &[usize], perm: &[usize]) -> CMatrix {
    let n = d.pow(total as u32);
    let mut m = CMatrix::zeros(n, n);
    for col in 0..n {
        let digits = digits_of(col, d, total);
        let mut out = digits.clone();
        for (i, &p) in perm.iter().enumerate() {
            out[subsystems[i]] = digits[subsystems[p]];
        }
        m[(index_of(&out, d), col)] = cr(1.0);
    }
    m
}

fn check_subsystems(k: usize, subsystems: &[usize], total: usize) -> Result<()> {
    if k == 0 || k > total {
        return Err(Error::InvalidArgument(format!(
            "copy count {k} out of range for {total} parties"
        )));
    }
    if subsystems.len() != k {
        return Err(Error::InvalidArgument(format!(
            "subsystem set has {} indices, expected {k}",
            subsystems.len()
        )));
    }
    let mut seen = vec![false; total];
    for &s in subsystems {
        if s >= total {
            return Err(Error::InvalidArgument(format!(
                "subsystem index {s} out of range for {total} parties"
            )));
        }
        if seen[s] {
            return Err(Error::InvalidArgument(format!("duplicate subsystem index {s}")));
        }
        seen[s] = true;
    }
    Ok(())
}

fn permutations_of(k: usize) -> Vec<(Vec<usize>, f64)> {
    // Heap's algorithm, tracking parity.
    let mut perms = Vec::new();
    let mut a: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1.0f64;
    perms.push((a.clone(), sign));
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            perms.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    perms
}

/// Projector onto the totally symmetric subspace of the named subsystems,
/// tensored with identity on the rest.
///
/// For k ≤ 6 parties the projector is the explicit permutation average
/// (1/k!) Σ_σ σ; beyond that the k! sum is replaced by the transposition
/// coset recursion S_k = (1/k)(I + Σ_j (j k)) S_{k−1}.
pub fn symmetric_projector(
    d: usize,
    k: usize,
    subsystems: &[usize],
    total: usize,
) -> Result<HermitianOperator> {
    check_subsystems(k, subsystems, total)?;
    let n = d.pow(total as u32);
    let m = if k <= 6 {
        let perms = permutations_of(k);
        let mut acc = CMatrix::zeros(n, n);
        for (perm, _) in &perms {
            acc += permutation_operator(d, total, subsystems, perm);
        }
        acc / cr(perms.len() as f64)
    } else {
        let mut acc = identity(n);
        for m_parties in 2..=k {
            // coset sum: identity plus transpositions (j, m_parties-1)
            let mut step = identity(n);
            for j in 0..m_parties - 1 {
                let mut perm: Vec<usize> = (0..k).collect();
                perm.swap(j, m_parties - 1);
                step += permutation_operator(d, total, subsystems, &perm);
            }
            acc = step * acc / cr(m_parties as f64);
        }
        hermitize(&acc)
    };
    HermitianOperator::new(m, DEFAULT_TOL)
}

/// A subspace projector that may be the zero operator when the subspace does
/// not exist (totally antisymmetric subspace with more parties than levels).
#[derive(Debug, Clone)]
pub struct SubspaceProjector {
    pub operator: HermitianOperator,
    /// True when the projected subspace is empty.
    pub empty: bool,
}

/// Projector onto the totally antisymmetric subspace of the named
/// subsystems, tensored with identity on the rest.
///
/// For k > d the subspace does not exist; the zero operator is returned with
/// the `empty` flag set.
pub fn antisymmetric_projector(
    d: usize,
    k: usize,
    subsystems: &[usize],
    total: usize,
) -> Result<SubspaceProjector> {
    check_subsystems(k, subsystems, total)?;
    let n = d.pow(total as u32);
    if k > d {
        return Ok(SubspaceProjector {
            operator: HermitianOperator::zero(n),
            empty: true,
        });
    }
    let perms = permutations_of(k);
    let mut acc = CMatrix::zeros(n, n);
    for (perm, sign) in &perms {
        acc += permutation_operator(d, total, subsystems, perm) * cr(*sign);
    }
    acc /= cr(perms.len() as f64);
    Ok(SubspaceProjector {
        operator: HermitianOperator::new(acc, DEFAULT_TOL)?,
        empty: false,
    })
}

/// Projector onto the support of a positive semidefinite operator: the span
/// of eigenvectors with eigenvalue above `tol` times the largest eigenvalue.
pub fn support_projector(a: &HermitianOperator, tol: f64) -> Result<HermitianOperator> {
    let (vals, vecs) = herm_eigen(a.matrix());
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(&min) = vals.last() {
        if scale > 0.0 && min < -tol * scale {
            return Err(Error::NotPositive(min));
        }
    }
    let mut p = CMatrix::zeros(a.dim(), a.dim());
    for (i, &v) in vals.iter().enumerate() {
        if scale > 0.0 && v > tol * scale {
            let col = vecs.column(i);
            p += col * col.adjoint();
        }
    }
    Ok(HermitianOperator::from_hermitian_parts(p, a.tol()))
}

/// Projector onto the kernel (orthocomplement of the support).
pub fn kernel_projector(a: &HermitianOperator, tol: f64) -> Result<HermitianOperator> {
    let s = support_projector(a, tol)?;
    Ok(HermitianOperator::from_hermitian_parts(
        identity(a.dim()) - s.matrix(),
        a.tol(),
    ))
}

/// Projector onto the intersection of two projector ranges, found as the
/// eigenspace of P + Q with eigenvalue above 2 − 1e-8.
pub fn intersect_projectors(p: &CMatrix, q: &CMatrix) -> CMatrix {
    let vecs = eigenspace_above(&(p + q), 2.0 - 1e-8);
    let n = p.nrows();
    let mut out = CMatrix::zeros(n, n);
    for v in vecs {
        out += &v * v.adjoint();
    }
    out
}

/// Partial trace over the listed subsystems.
///
/// `dims` gives the local dimension of each party; the result lives on the
/// remaining parties in their original order.
pub fn partial_trace(
    a: &CMatrix,
    traced_subsystems: &[usize],
    dims: &[usize],
) -> Result<CMatrix> {
    let total_dim: usize = dims.iter().product();
    if a.nrows() != total_dim || a.ncols() != total_dim {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, dims give {total_dim}",
            a.nrows(),
            a.ncols()
        )));
    }
    let mut traced_flags = vec![false; dims.len()];
    for &t in traced_subsystems {
        if t >= dims.len() {
            return Err(Error::InvalidArgument(format!("traced subsystem {t} out of range")));
        }
        if traced_flags[t] {
            return Err(Error::InvalidArgument(format!("duplicate traced subsystem {t}")));
        }
        traced_flags[t] = true;
    }
    let kept: Vec<usize> = (0..dims.len()).filter(|&i| !traced_flags[i]).collect();
    let kept_dim: usize = kept.iter().map(|&i| dims[i]).product();
    let traced: Vec<usize> = (0..dims.len()).filter(|&i| traced_flags[i]).collect();
    let traced_dim: usize = traced.iter().map(|&i| dims[i]).product();

    // strides of each party in the flat index
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }

    let flat = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut rem_k = kept_idx;
        let mut rem_t = traced_idx;
        let mut idx = 0;
        for (pos, &party) in kept.iter().enumerate() {
            let size: usize = kept[pos + 1..].iter().map(|&i| dims[i]).product();
            let digit = rem_k / size.max(1);
            rem_k %= size.max(1);
            idx += digit * strides[party];
        }
        for (pos, &party) in traced.iter().enumerate() {
            let size: usize = traced[pos + 1..].iter().map(|&i| dims[i]).product();
            let digit = rem_t / size.max(1);
            rem_t %= size.max(1);
            idx += digit * strides[party];
        }
        idx
    };

    let mut out = CMatrix::zeros(kept_dim, kept_dim);
    for r in 0..kept_dim {
        for c_ in 0..kept_dim {
            let mut acc = cr(0.0);
            for t in 0..traced_dim {
                acc += a[(flat(r, t), flat(c_, t))];
            }
            out[(r, c_)] = acc;
        }
    }
    Ok(out)
}

/// Tensor power v ⊗ v ⊗ … ⊗ v (k factors).
pub fn vector_power(v: &CVector, k: usize) -> CVector {
    let mut out = v.clone();
    for _ in 1..k {
        out = out.kronecker(v);
    }
    out
}

/// Tensor product across an ordered list of single-party vectors.
pub fn tensor_vectors(parts: &[&CVector]) -> CVector {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        out = out.kronecker(p);
    }
    out
}

/// Dimension of the totally symmetric subspace of k d-level systems,
/// C(d+k−1, k).
pub fn symmetric_dimension(d: usize, k: usize) -> f64 {
    crate::comparison::binomial((d + k - 1) as u64, k as u64)
}

/// Embed an operator acting on the named subsystems (in the listed order)
/// into the full space, acting as identity elsewhere.
pub fn embed_operator(d: usize, total: usize, subsystems: &[usize], op: &CMatrix) -> CMatrix {
    let k = subsystems.len();
    let sub_dim = d.pow(k as u32);
    assert_eq!(op.nrows(), sub_dim, "operator does not match subsystem count");
    let n = d.pow(total as u32);
    let mut out = CMatrix::zeros(n, n);
    for row in 0..n {
        let rd = digits_of(row, d, total);
        for col in 0..n {
            let cd = digits_of(col, d, total);
            // identity on every party not listed
            if (0..total)
                .filter(|p| !subsystems.contains(p))
                .any(|p| rd[p] != cd[p])
            {
                continue;
            }
            let sub_row = index_of(&subsystems.iter().map(|&p| rd[p]).collect::<Vec<_>>(), d);
            let sub_col = index_of(&subsystems.iter().map(|&p| cd[p]).collect::<Vec<_>>(), d);
            out[(row, col)] = op[(sub_row, sub_col)];
        }
    }
    out
}

/// Assemble a multi-party pure state from single-party factors and
/// two-party (possibly entangled) factors on the named parties.
pub fn assemble_state(
    d: usize,
    total: usize,
    singles: &[(usize, &CVector)],
    pairs: &[((usize, usize), &CVector)],
) -> CVector {
    let n = d.pow(total as u32);
    let mut assigned = vec![false; total];
    for (p, _) in singles {
        assigned[*p] = true;
    }
    for ((p, q), _) in pairs {
        assigned[*p] = true;
        assigned[*q] = true;
    }
    assert!(assigned.iter().all(|&a| a), "every party needs a factor");
    let mut out = CVector::zeros(n);
    for idx in 0..n {
        let digits = digits_of(idx, d, total);
        let mut amp = cr(1.0);
        for (p, v) in singles {
            amp *= v[digits[*p]];
        }
        for ((p, q), v) in pairs {
            amp *= v[digits[*p] * d + digits[*q]];
        }
        out[idx] = amp;
    }
    out
}
