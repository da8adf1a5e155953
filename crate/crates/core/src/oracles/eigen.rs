//! Symmetric tridiagonal eigensolver.
//!
//! Eigenvalues come from implicitly shifted QL without accumulating
//! transformations, eigenvectors from inverse iteration on the computed
//! eigenvalues. Vectors whose eigenvalues are closer than `CLUSTER_GAP·‖T‖`
//! are reorthogonalized against each other with modified Gram-Schmidt.
//! The whole decomposition costs O(n²) outside of clusters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::grid::SymTridiag;

const MAX_QL_ITERATIONS: usize = 60;
const MAX_INVERSE_ITERATIONS: usize = 10;
const CLUSTER_GAP: f64 = 1e-5;

/// Eigenpairs of a [`SymTridiag`], eigenvalues ascending.
///
/// Eigenvectors are normalized with the matrix spacing as weight:
/// `Σᵢ φₙ(xᵢ)² h = 1`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    vectors: Vec<f64>,
    n: usize,
    pub spacing: f64,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }

    /// `Σₙ φₙ(xᵢ)² e^{−βεₙ}` for every node `i`.
    pub fn slater_diagonal(&self, beta: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        // Smallest eigenvalues last so the dominant terms are added onto the tail sum.
        for k in (0..self.n).rev() {
            let w = (-beta * self.eigenvalues[k]).exp();
            if w == 0.0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(self.eigenvector(k)) {
                *o += w * p * p;
            }
        }
        out
    }

    /// `Tr e^{−βH} = Σₙ e^{−βεₙ}`.
    pub fn partition_function(&self, beta: f64) -> f64 {
        self.eigenvalues.iter().rev().map(|&e| (-beta * e).exp()).sum()
    }
}

/// Eigenvalues of `m`, ascending.
pub fn eigenvalues(m: &SymTridiag) -> Result<Vec<f64>> {
    let n = m.len();
    let mut d = m.diag.clone();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&m.offdiag);
    let eps = f64::EPSILON;
    let mut shift = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut mm = l;
        while mm < n && e[mm].abs() > eps * tst1 {
            mm += 1;
        }
        if mm > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence { index: l });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                shift += h;

                p = d[mm];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..mm).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift;
        e[l] = 0.0;
    }
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoConvergence { index: 0 });
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Full eigendecomposition of `m`.
pub fn eigendecompose(m: &SymTridiag) -> Result<SpectralDecomposition> {
    let n = m.len();
    let mut lambda = eigenvalues(m)?;
    let norm = m.norm().max(f64::MIN_POSITIVE);
    let mut vectors = vec![0.0; n * n];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cluster_start = 0;

    for j in 0..n {
        if j > 0 {
            if lambda[j] - lambda[j - 1] >= CLUSTER_GAP * norm {
                cluster_start = j;
            }
            // Inverse iteration needs distinct shifts.
            let pert = 10.0 * f64::EPSILON * norm;
            if lambda[j] - lambda[j - 1] < pert {
                lambda[j] = lambda[j - 1] + pert;
            }
        }
        let lu = ShiftedLu::factor(m, lambda[j], norm);
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        normalize(&mut x);
        let (done, rest) = vectors.split_at_mut(j * n);
        let out = &mut rest[..n];
        let mut converged = 0;
        for _ in 0..MAX_INVERSE_ITERATIONS {
            lu.solve(&mut x);
            for i in cluster_start..j {
                let v = &done[i * n..(i + 1) * n];
                let proj: f64 = v.iter().zip(&x).map(|(a, b)| a * b).sum();
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi -= proj * vi;
                }
            }
            let growth = normalize(&mut x);
            // ‖(T − λ)x‖ ≈ 1/growth once x is normalized.
            if growth * 1e-11 * norm >= 1.0 {
                converged += 1;
                if converged > 1 {
                    break;
                }
            }
        }
        if converged == 0 || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NoConvergence { index: j });
        }
        // Deterministic sign: largest component positive.
        let big = x.iter().copied().fold(0.0_f64, |a, b| if b.abs() > a.abs() { b } else { a });
        let scale = big.signum() / m.spacing.sqrt();
        for (o, xi) in out.iter_mut().zip(&x) {
            *o = xi * scale;
        }
    }
    Ok(SpectralDecomposition { eigenvalues: lambda, vectors, n, spacing: m.spacing })
}

fn normalize(x: &mut [f64]) -> f64 {
    let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if nrm > 0.0 {
        for v in x.iter_mut() {
            *v /= nrm;
        }
    }
    nrm
}

/// Partial-pivot LU of `T − λI`; `U` has two superdiagonals.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swap: Vec<bool>,
}

impl ShiftedLu {
    fn factor(m: &SymTridiag, lambda: f64, norm: f64) -> Self {
        let n = m.len();
        let tiny = f64::EPSILON * norm;
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swap = vec![false; n];
        let mut a = m.diag[0] - lambda;
        let mut b = if n > 1 { m.offdiag[0] } else { 0.0 };
        for k in 0..n - 1 {
            let c = m.offdiag[k];
            let a_next = m.diag[k + 1] - lambda;
            let b_next = if k + 2 < n { m.offdiag[k + 1] } else { 0.0 };
            if a.abs() >= c.abs() {
                let piv = if a == 0.0 { tiny } else { a };
                u0[k] = piv;
                u1[k] = b;
                mult[k] = c / piv;
                a = a_next - mult[k] * b;
                b = b_next;
            } else {
                swap[k] = true;
                u0[k] = c;
                u1[k] = a_next;
                u2[k] = b_next;
                mult[k] = a / c;
                a = b - mult[k] * a_next;
                b = -mult[k] * b_next;
            }
        }
        u0[n - 1] = if a.abs() < tiny { tiny.copysign(a) } else { a };
        for p in u0.iter_mut() {
            if p.abs() < tiny {
                *p = tiny.copysign(*p);
            }
        }
        Self { u0, u1, u2, mult, swap }
    }

    fn solve(&self, y: &mut [f64]) {
        let n = y.len();
        for k in 0..n - 1 {
            if self.swap[k] {
                y.swap(k, k + 1);
            }
            y[k + 1] -= self.mult[k] * y[k];
        }
        y[n - 1] /= self.u0[n - 1];
        if n > 1 {
            y[n - 2] = (y[n - 2] - self.u1[n - 2] * y[n - 1]) / self.u0[n - 2];
        }
        for k in (0..n.saturating_sub(2)).rev() {
            y[k] = (y[k] - self.u1[k] * y[k + 1] - self.u2[k] * y[k + 2]) / self.u0[k];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn free(n: usize, a: f64) -> SymTridiag {
        SymTridiag::new(vec![2.0 * a; n], vec![-a; n - 1]).unwrap()
    }

    fn check_decomposition(m: &SymTridiag, s: &SpectralDecomposition, orth_tol: f64) {
        let n = m.len();
        let norm = m.norm();
        for k in 0..n {
            let v = s.eigenvector(k);
            let tv = m.apply(v);
            let res = tv.iter().zip(v).map(|(a, b)| (a - s.eigenvalues[k] * b).powi(2)).sum::<f64>().sqrt()
                * m.spacing.sqrt();
            assert!(res <= 1e-8 * norm, "residual {res} for k={k}");
        }
        for i in 0..n {
            for j in i..n {
                let ip: f64 =
                    s.eigenvector(i).iter().zip(s.eigenvector(j)).map(|(a, b)| a * b).sum::<f64>() * m.spacing;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - want).abs() <= orth_tol, "<{i}|{j}> = {ip}");
            }
        }
    }

    #[test]
    fn two_by_two() {
        let m = SymTridiag::new(vec![2.0, 2.0], vec![-1.0]).unwrap();
        let s = eigendecompose(&m).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-14);
        let v0 = s.eigenvector(0);
        assert!((v0[0].abs() - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((v0[0] - v0[1]).abs() < 1e-14);
        check_decomposition(&m, &s, 1e-12);
    }

    #[test]
    fn one_by_one() {
        let m = SymTridiag::with_spacing(vec![4.0], vec![], 0.25).unwrap();
        let s = eigendecompose(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![4.0]);
        assert!((s.eigenvector(0)[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn three_by_three_free() {
        let c = 0.7;
        let a = 1.3;
        let m = SymTridiag::new(vec![2.0 * a + c; 3], vec![-a; 2]).unwrap();
        let ev = eigenvalues(&m).unwrap();
        assert!((ev[0] - (c + (2.0 - 2f64.sqrt()) * a)).abs() < 1e-13);
        assert!((ev[1] - (c + 2.0 * a)).abs() < 1e-13);
        assert!((ev[2] - (c + (2.0 + 2f64.sqrt()) * a)).abs() < 1e-13);
    }

    #[test]
    fn free_chain_closed_form() {
        let n = 300;
        let m = free(n, 1.0);
        let ev = eigenvalues(&m).unwrap();
        for (k, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-12, "k={k}: {e} vs {exact}");
        }
        let s = eigendecompose(&m).unwrap();
        check_decomposition(&m, &s, 1e-10);
    }

    #[test]
    fn random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[5usize, 40, 257] {
            let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let o: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let m = SymTridiag::with_spacing(d, o, 0.1).unwrap();
            let s = eigendecompose(&m).unwrap();
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = s.eigenvalues.iter().sum();
            assert!((sum - m.trace()).abs() <= 1e-12 * m.trace().abs().max(m.norm() * n as f64));
            check_decomposition(&m, &s, 1e-10);
        }
    }

    #[test]
    fn split_matrix_with_degeneracy() {
        // Two identical decoupled blocks: every eigenvalue is doubled.
        let m = SymTridiag::new(vec![2.0, 2.0, 2.0, 2.0, 2.0, 2.0], vec![-1.0, -1.0, 0.0, -1.0, -1.0]).unwrap();
        let s = eigendecompose(&m).unwrap();
        for k in 0..3 {
            assert!((s.eigenvalues[2 * k] - s.eigenvalues[2 * k + 1]).abs() < 1e-12);
        }
        check_decomposition(&m, &s, 1e-10);
    }

    #[test]
    fn diagonal_matrix() {
        let m = SymTridiag::new(vec![3.0, -1.0, 2.0, 2.0], vec![0.0; 3]).unwrap();
        let s = eigendecompose(&m).unwrap();
        assert_eq!(s.eigenvalues[0], -1.0);
        assert_eq!(s.eigenvalues[3], 3.0);
        check_decomposition(&m, &s, 1e-12);
    }

    #[test]
    fn slater_diagonal_sums_to_partition_function() {
        let m = SymTridiag::with_spacing(vec![1.0, 2.0, 0.5, 3.0], vec![0.3, -0.2, 0.7], 0.5).unwrap();
        let s = eigendecompose(&m).unwrap();
        let c = s.slater_diagonal(0.8);
        let z: f64 = c.iter().sum::<f64>() * 0.5;
        assert!((z - s.partition_function(0.8)).abs() < 1e-13);
    }
}
