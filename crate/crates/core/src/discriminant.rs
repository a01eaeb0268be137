//! Mixed discriminants `D(A₁,…,Aₙ)`: the symmetric multilinear form whose
//! diagonal is the determinant, so that `det(Σ λᵢAᵢ) = Σ λ_{i₁}⋯λ_{iₙ} D(A_{i₁},…,A_{iₙ})`.
//!
//! Two independent evaluations are provided: [`md_perm`] sums determinants
//! over column permutations, [`md_incl_excl`] polarizes the determinant over
//! subset sums. They agree to round-off and are used to cross-check each other.
//!
//! [`thm1_check`] evaluates the inequality
//! `D(A₁,A₃[n−1])·D(A₂,A₃[n−1]) ≥ (n−1)/n · D(A₁,A₂,A₃[n−2])·D(A₃[n])`
//! for positive semi-definite arguments, its gap identity
//! `gap = det(A₃)²·tr(A₃⁻¹A₁A₃⁻¹A₂)/n²`, and classifies equality cases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{det_in_place, rank_psd, Matrix, SymMatrix};

/// Largest `n` accepted by [`md_perm`] (`n!` determinants).
pub const PERM_MAX_DIM: usize = 8;
/// Largest `n` accepted by [`md_incl_excl`] (`2ⁿ` determinants).
pub const INCL_EXCL_MAX_DIM: usize = 20;
/// Default relative tolerance for equality classification.
pub const DEFAULT_EQUALITY_TOL: f64 = 1e-8;
/// Relative eigenvalue threshold used to decide ranks.
pub const RANK_TOL: f64 = 1e-9;

/// Arguments of a mixed discriminant with multiplicities (`A[i]` is `i` copies of `A`).
#[derive(Debug, Clone)]
pub struct MatArgs {
    dim: usize,
    items: Vec<(Matrix, usize)>,
}

impl MatArgs {
    pub fn new(dim: usize) -> Self {
        MatArgs {
            dim,
            items: Vec::new(),
        }
    }

    pub fn with(self, m: &SymMatrix, multiplicity: usize) -> Self {
        self.with_matrix(m.as_matrix().clone(), multiplicity)
    }

    /// General (possibly non-symmetric) argument; the permutation and
    /// polarization formulas do not need symmetry.
    pub fn with_matrix(mut self, m: Matrix, multiplicity: usize) -> Self {
        if multiplicity > 0 {
            self.items.push((m, multiplicity));
        }
        self
    }

    /// Convenience constructor from a flat list of symmetric matrices.
    pub fn from_list(list: &[&SymMatrix]) -> Result<Self> {
        let dim = list.first().map(|m| m.dim()).ok_or_else(|| Error::param("empty argument list"))?;
        let args = list.iter().fold(MatArgs::new(dim), |a, m| a.with(m, 1));
        args.validate()?;
        Ok(args)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn validate(&self) -> Result<()> {
        for (m, _) in &self.items {
            Error::check_dim(self.dim, m.dim())?;
        }
        let total: usize = self.items.iter().map(|(_, k)| k).sum();
        if total != self.dim {
            return Err(Error::param(format!(
                "multiplicities sum to {total}, expected {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// The arguments with multiplicities expanded, in order.
    pub fn flatten(&self) -> Vec<&Matrix> {
        self.items
            .iter()
            .flat_map(|(m, k)| std::iter::repeat_n(m, *k))
            .collect()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `(1/n!) Σ_σ det(A_{σ(1)}¹, …, A_{σ(n)}ⁿ)` where `Aⁱ` is the `i`-th column.
pub fn md_perm(args: &MatArgs) -> Result<f64> {
    args.validate()?;
    let n = args.dim();
    if n > PERM_MAX_DIM {
        return Err(Error::capacity(
            format!("md_perm with n = {n}"),
            format!("n <= {PERM_MAX_DIM} (n! permutations)"),
        ));
    }
    let list = args.flatten();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut work = vec![0.0; n * n];
    let mut total = 0.0;
    let eval = |perm: &[usize], work: &mut [f64]| {
        for (col, &src) in perm.iter().enumerate() {
            let m = list[src];
            for row in 0..n {
                work[row * n + col] = m.get(row, col);
            }
        }
        det_in_place(work, n)
    };
    // Heap's algorithm, iterative form.
    total += eval(&perm, &mut work);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += eval(&perm, &mut work);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total / factorial(n))
}

/// `(1/n!) Σ_{∅≠S⊆[n]} (−1)^{n−|S|} det(Σ_{i∈S} Aᵢ)`.
pub fn md_incl_excl(args: &MatArgs) -> Result<f64> {
    args.validate()?;
    let n = args.dim();
    if n > INCL_EXCL_MAX_DIM {
        return Err(Error::capacity(
            format!("md_incl_excl with n = {n}"),
            format!("n <= {INCL_EXCL_MAX_DIM} (2^n subsets)"),
        ));
    }
    let list = args.flatten();
    let mut total = 0.0;
    let mut work = vec![0.0; n * n];
    for mask in 1u32..(1u32 << n) {
        work.iter_mut().for_each(|w| *w = 0.0);
        for (k, m) in list.iter().enumerate() {
            if mask & (1 << k) != 0 {
                for r in 0..n {
                    for c in 0..n {
                        work[r * n + c] += m.get(r, c);
                    }
                }
            }
        }
        let d = det_in_place(&mut work, n);
        if (n - mask.count_ones() as usize) % 2 == 0 {
            total += d;
        } else {
            total -= d;
        }
    }
    Ok(total / factorial(n))
}

/// Closed forms `(D(X,I[n−1]), D(Y,I[n−1]), D(X,Y,I[n−2]))`:
/// `tr X / n`, `tr Y / n` and `Σ_{i,j}(x_ii·y_jj − x_ji·y_ij) / (n(n−1))`.
pub fn md_reduced_pattern(x: &Matrix, y: &Matrix) -> Result<(f64, f64, f64)> {
    let n = x.dim();
    Error::check_dim(n, y.dim())?;
    if n < 2 {
        return Err(Error::param("reduced pattern needs n >= 2"));
    }
    let nf = n as f64;
    let mut mixed = 0.0;
    for i in 0..n {
        for j in 0..n {
            mixed += x.get(i, i) * y.get(j, j) - x.get(j, i) * y.get(i, j);
        }
    }
    Ok((x.trace() / nf, y.trace() / nf, mixed / (nf * (nf - 1.0))))
}

/// Equality cases of the discriminant inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityCase {
    /// Structure predicts a positive gap.
    Strict,
    /// `A₃` invertible and `A₁A₃⁻¹A₂ = 0`.
    CaseI,
    /// `rank A₃ ≤ n − 2`.
    CaseII,
    /// `rank A₃ = n − 1` and `Im Aᵢ ⊆ Im A₃` for `i = 1` or `2`.
    CaseIII,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Thm1Report {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    /// `max(1, |lhs|, |rhs|)`.
    pub scale: f64,
    pub rank_a3: usize,
    /// `det(A₃)²·tr(A₃⁻¹A₁A₃⁻¹A₂)/n²`, only when `A₃` is invertible.
    pub trace_identity: Option<f64>,
    /// `|gap − trace_identity|`.
    pub trace_identity_residual: Option<f64>,
    /// Residual divided by `max(|lhs|, |rhs|)`.
    pub trace_identity_relative: Option<f64>,
    pub equality_case: EqualityCase,
    /// `|gap| ≤ tol·scale`.
    pub is_equality: bool,
    /// Numeric equality co-occurs exactly with a non-strict structural label.
    pub consistent: bool,
    pub tol: f64,
}

/// Column-space inclusion `Im(a) ⊆ span(basis)` for PSD `a`: with `P` the
/// projector onto the orthogonal complement of `basis`, `tr(PaP) = ‖P a^{1/2}‖²`
/// vanishes exactly on inclusion. It is compared with `tol·tr(a)`; the gap of
/// the inequality is linear in this quantity, so both tests share one scale.
fn image_included(a: &SymMatrix, basis: &[Vec<f64>], tol: f64) -> bool {
    let n = a.dim();
    let total = a.trace();
    if total <= 0.0 {
        return true;
    }
    // tr(PaP) = tr(a) − Σ_b bᵀab for an orthonormal basis of the range.
    let mut inside = 0.0;
    for b in basis {
        let ab = a.as_matrix().mul_vec(b);
        inside += (0..n).map(|i| b[i] * ab[i]).sum::<f64>();
    }
    (total - inside).max(0.0) <= tol * total
}

/// Evaluates the discriminant inequality for PSD `a1, a2, a3` (caller-asserted).
pub fn thm1_check(a1: &SymMatrix, a2: &SymMatrix, a3: &SymMatrix, tol: f64) -> Result<Thm1Report> {
    let n = a3.dim();
    Error::check_dim(n, a1.dim())?;
    Error::check_dim(n, a2.dim())?;
    if n < 2 {
        return Err(Error::param("theorem check needs n >= 2"));
    }
    let d1 = md_incl_excl(&MatArgs::new(n).with(a1, 1).with(a3, n - 1))?;
    let d2 = md_incl_excl(&MatArgs::new(n).with(a2, 1).with(a3, n - 1))?;
    let d12 = md_incl_excl(&MatArgs::new(n).with(a1, 1).with(a2, 1).with(a3, n - 2))?;
    let d3 = md_incl_excl(&MatArgs::new(n).with(a3, n))?;
    let nf = n as f64;
    let lhs = d1 * d2;
    let rhs = (nf - 1.0) / nf * d12 * d3;
    let gap = lhs - rhs;
    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
    let is_equality = gap.abs() <= tol * scale;

    let rank_a3 = rank_psd(a3, RANK_TOL)?;
    let mut trace_identity = None;
    let mut residual = None;
    let mut relative = None;
    let equality_case = if rank_a3 == n {
        let inv = a3.inverse().ok_or_else(|| Error::Undefined("A3 numerically singular".into()))?;
        let x = inv.as_matrix().mul(a1.as_matrix());
        let y = inv.as_matrix().mul(a2.as_matrix());
        let det = a3.det();
        let identity = det * det * x.mul(&y).trace() / (nf * nf);
        let res = (gap - identity).abs();
        trace_identity = Some(identity);
        residual = Some(res);
        let denom = lhs.abs().max(rhs.abs());
        relative = Some(if denom > 0.0 { res / denom } else { res });

        let product = a1.as_matrix().mul(inv.as_matrix()).mul(a2.as_matrix());
        let bound = a1.as_matrix().frobenius_norm()
            * inv.as_matrix().frobenius_norm()
            * a2.as_matrix().frobenius_norm();
        if product.frobenius_norm() <= tol * bound {
            EqualityCase::CaseI
        } else {
            EqualityCase::Strict
        }
    } else if rank_a3 + 2 <= n {
        EqualityCase::CaseII
    } else {
        let basis = a3.range_basis(RANK_TOL);
        if image_included(a1, &basis, tol) || image_included(a2, &basis, tol) {
            EqualityCase::CaseIII
        } else {
            EqualityCase::Strict
        }
    };
    let consistent = is_equality == (equality_case != EqualityCase::Strict);
    Ok(Thm1Report {
        n,
        lhs,
        rhs,
        gap,
        scale,
        rank_a3,
        trace_identity,
        trace_identity_residual: residual,
        trace_identity_relative: relative,
        equality_case,
        is_equality,
        consistent,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_psd;

    fn d(list: &[&SymMatrix]) -> (f64, f64) {
        let args = MatArgs::from_list(list).unwrap();
        (md_perm(&args).unwrap(), md_incl_excl(&args).unwrap())
    }

    #[test]
    fn identity_and_diagonal() {
        let i3 = SymMatrix::identity(3);
        let (p, q) = d(&[&i3, &i3, &i3]);
        assert!((p - 1.0).abs() < 1e-14 && (q - 1.0).abs() < 1e-14);
        let a = SymMatrix::diag(&[1.0, 2.0, 3.0]);
        let (p, q) = d(&[&a, &a, &a]);
        assert!((p - 6.0).abs() < 1e-13 && (q - 6.0).abs() < 1e-12);
    }

    #[test]
    fn two_by_two_polarization() {
        // det(λ·diag(1,2) + μ·diag(3,4)) = 2λ² + 10λμ + 12μ², so 2D = 10.
        let a = SymMatrix::diag(&[1.0, 2.0]);
        let b = SymMatrix::diag(&[3.0, 4.0]);
        let (p, q) = d(&[&a, &b]);
        assert!((p - 5.0).abs() < 1e-14);
        assert!((q - 5.0).abs() < 1e-13);
    }

    #[test]
    fn identity_powers() {
        for n in 2..=6 {
            let i = SymMatrix::identity(n);
            let v = md_incl_excl(&MatArgs::new(n).with(&i, n)).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "n={n}: {v}");
        }
    }

    #[test]
    fn zero_slot_vanishes() {
        let a = random_psd(3, 3, 5).unwrap();
        let z = SymMatrix::zeros(3);
        let (p, q) = d(&[&a, &z, &a]);
        assert_eq!(p, 0.0);
        assert!(q.abs() < 1e-12);
    }

    #[test]
    fn capacity_bounds() {
        let i = SymMatrix::identity(9);
        let args = MatArgs::new(9).with(&i, 9);
        assert!(matches!(md_perm(&args), Err(Error::Capacity { .. })));
        let i = SymMatrix::identity(21);
        assert!(matches!(
            md_incl_excl(&MatArgs::new(21).with(&i, 21)),
            Err(Error::Capacity { .. })
        ));
        let i = SymMatrix::identity(3);
        assert!(md_perm(&MatArgs::new(3).with(&i, 2)).is_err());
    }

    #[test]
    fn reduced_pattern_examples() {
        let x = Matrix::diag(&[3.0, 0.0, 0.0]);
        let (a, _, _) = md_reduced_pattern(&x, &x).unwrap();
        assert!((a - 1.0).abs() < 1e-15);
        let i = Matrix::identity(3);
        assert_eq!(md_reduced_pattern(&i, &i).unwrap(), (1.0, 1.0, 1.0));
        let x = Matrix::diag(&[1.0, 0.0]);
        let y = Matrix::diag(&[0.0, 1.0]);
        let (_, _, c) = md_reduced_pattern(&x, &y).unwrap();
        assert!((c - 0.5).abs() < 1e-15);
        let args = MatArgs::new(2)
            .with_matrix(x.clone(), 1)
            .with_matrix(y.clone(), 1);
        assert!((md_perm(&args).unwrap() - c).abs() < 1e-15);
        assert!(md_reduced_pattern(&Matrix::identity(1), &Matrix::identity(1)).is_err());
    }

    #[test]
    fn reduced_pattern_matches_permutation_formula() {
        let mut r = crate::rng::rng(12);
        for n in 2..=5 {
            let x = crate::matrix::random_matrix(n, &mut r);
            let y = crate::matrix::random_matrix(n, &mut r);
            let (a, b, c) = md_reduced_pattern(&x, &y).unwrap();
            let id = Matrix::identity(n);
            let pa = md_perm(&MatArgs::new(n).with_matrix(x.clone(), 1).with_matrix(id.clone(), n - 1)).unwrap();
            let pb = md_perm(&MatArgs::new(n).with_matrix(y.clone(), 1).with_matrix(id.clone(), n - 1)).unwrap();
            let pc = md_perm(
                &MatArgs::new(n)
                    .with_matrix(x.clone(), 1)
                    .with_matrix(y.clone(), 1)
                    .with_matrix(id, n - 2),
            )
            .unwrap();
            for (u, v) in [(a, pa), (b, pb), (c, pc)] {
                assert!((u - v).abs() <= 1e-10 * (1.0 + v.abs()), "n={n}: {u} vs {v}");
            }
        }
    }

    #[test]
    fn thm1_identity_instance() {
        let i = SymMatrix::identity(3);
        let r = thm1_check(&i, &i, &i, DEFAULT_EQUALITY_TOL).unwrap();
        assert!((r.gap - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.trace_identity_residual.unwrap() <= 1e-12);
        assert_eq!(r.equality_case, EqualityCase::Strict);
        assert!(r.consistent);
    }

    #[test]
    fn thm1_equality_cases() {
        let i = SymMatrix::identity(3);
        let r = thm1_check(
            &SymMatrix::diag(&[1.0, 0.0, 0.0]),
            &SymMatrix::diag(&[0.0, 1.0, 0.0]),
            &i,
            DEFAULT_EQUALITY_TOL,
        )
        .unwrap();
        assert_eq!(r.equality_case, EqualityCase::CaseI);
        assert!(r.gap.abs() <= 1e-10 * r.scale && r.consistent);

        let a1 = random_psd(3, 3, 1).unwrap();
        let a2 = random_psd(3, 2, 2).unwrap();
        let r = thm1_check(&a1, &a2, &SymMatrix::diag(&[1.0, 0.0, 0.0]), DEFAULT_EQUALITY_TOL).unwrap();
        assert_eq!(r.equality_case, EqualityCase::CaseII);
        assert!(r.lhs.abs() <= 1e-12 && r.rhs.abs() <= 1e-12 && r.consistent);

        let a3 = SymMatrix::diag(&[1.0, 1.0, 0.0]);
        let r = thm1_check(&SymMatrix::diag(&[1.0, 2.0, 0.0]), &i, &a3, DEFAULT_EQUALITY_TOL).unwrap();
        assert_eq!(r.equality_case, EqualityCase::CaseIII);
        assert!(r.gap.abs() <= 1e-10 * r.scale && r.consistent);

        // Rank n − 1 without inclusion: D(I, A₃, A₃) = 1/3, so the gap is 1/9.
        let r = thm1_check(&i, &i, &a3, DEFAULT_EQUALITY_TOL).unwrap();
        assert_eq!(r.equality_case, EqualityCase::Strict);
        assert!((r.gap - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn thm1_dimension_mismatch() {
        let r = thm1_check(
            &SymMatrix::identity(2),
            &SymMatrix::identity(3),
            &SymMatrix::identity(3),
            1e-8,
        );
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }
}
