//! Adjacency spectra of small and medium graphs.
//!
//! Two dense symmetric eigensolvers: cyclic Jacobi rotations, and Householder
//! tridiagonalisation followed by implicit QL. Jacobi is used up to
//! [`JACOBI_MAX_ORDER`] vertices; beyond that its O(n³)-per-sweep cost with
//! several sweeps is too slow for repeated draws at n = 1000.

use super::Graph;

/// Largest order for which [`spectrum`] uses Jacobi rotations.
pub const JACOBI_MAX_ORDER: usize = 128;

const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;
const QL_MAX_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    Jacobi,
    Tridiagonal,
}

/// Adjacency eigenvalues in non-increasing order, `λ₁ ≥ λ₂ ≥ … ≥ λ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    /// Eigenvalues, largest first.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lambda1(&self) -> f64 {
        self.values[0]
    }

    /// Second largest eigenvalue (equal to `λ₁` for a single vertex).
    pub fn lambda2(&self) -> f64 {
        *self.values.get(1).unwrap_or(&self.values[0])
    }

    pub fn lambda_min(&self) -> f64 {
        *self.values.last().expect("spectrum is nonempty")
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Spectrum of the adjacency matrix, choosing the solver by size.
pub fn spectrum(g: &Graph) -> Spectrum {
    let method = if g.order() <= JACOBI_MAX_ORDER { EigenMethod::Jacobi } else { EigenMethod::Tridiagonal };
    spectrum_with(g, method)
}

pub fn spectrum_with(g: &Graph, method: EigenMethod) -> Spectrum {
    assert!(g.order() >= 1, "spectrum of the empty graph");
    let values = match method {
        EigenMethod::Jacobi => eigenvalues_jacobi(adjacency_matrix(g), g.order()),
        EigenMethod::Tridiagonal => eigenvalues_tridiagonal(adjacency_matrix(g), g.order()),
    };
    Spectrum::from_unsorted(values)
}

fn adjacency_matrix(g: &Graph) -> Vec<f64> {
    let n = g.order();
    let mut a = vec![0.0; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    a
}

/// Eigenvalues of a symmetric row-major `n × n` matrix by cyclic Jacobi sweeps.
///
/// Stops once the off-diagonal Frobenius norm drops below `1e-12`.
pub fn eigenvalues_jacobi(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| 2.0 * a[i * n + j].powi(2)).sum();
        if off.sqrt() < JACOBI_OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Eigenvalues of a symmetric row-major matrix by Householder reduction and implicit QL.
///
/// Only the lower triangle is read.
pub fn eigenvalues_tridiagonal(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let (mut d, mut e) = householder(&mut a, n);
    implicit_ql(&mut d, &mut e);
    d
}

/// Reduces `a` to tridiagonal form; returns (diagonal, subdiagonal with `e[0] = 0`).
fn householder(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut e = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut u = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let row_i = i * n;
        if l == 0 {
            e[i] = a[row_i];
            continue;
        }
        let scale: f64 = a[row_i..=row_i + l].iter().map(|x| x.abs()).sum();
        if scale == 0.0 {
            e[i] = a[row_i + l];
            continue;
        }
        let mut h = 0.0;
        for k in 0..=l {
            a[row_i + k] /= scale;
            h += a[row_i + k] * a[row_i + k];
        }
        let f = a[row_i + l];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a[row_i + l] = f - g;
        u[..=l].copy_from_slice(&a[row_i..=row_i + l]);

        // p = A u / h using only the lower triangle, row by row.
        p[..=l].fill(0.0);
        for j in 0..=l {
            let row = &a[j * n..j * n + j + 1];
            let uj = u[j];
            let mut acc = row[j] * uj;
            for k in 0..j {
                acc += row[k] * u[k];
                p[k] += row[k] * uj;
            }
            p[j] += acc;
        }
        let mut f = 0.0;
        for j in 0..=l {
            p[j] /= h;
            f += p[j] * u[j];
        }
        let hh = f / (h + h);
        for j in 0..=l {
            p[j] -= hh * u[j];
        }
        for j in 0..=l {
            let (fj, gj) = (u[j], p[j]);
            let row = &mut a[j * n..j * n + j + 1];
            for k in 0..=j {
                row[k] -= fj * p[k] + gj * u[k];
            }
        }
    }
    let d = (0..n).map(|i| a[i * n + i]).collect();
    (d, e)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
fn implicit_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n < 2 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations <= QL_MAX_ITERATIONS, "implicit QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
