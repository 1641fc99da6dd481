//! Dense symmetric eigensolver: Householder tridiagonalisation followed by the
//! implicit-shift QL iteration.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) and, if requested, eigenvectors as columns of a
/// row-major n x n matrix.
pub struct Decomposition {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
}

/// Reduces the symmetric matrix in `v` to tridiagonal form (d, e) and
/// overwrites `v` with the orthogonal transformation.
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for x in d[..i].iter_mut() {
                *x /= scale;
                h += *x * *x;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].iter_mut().for_each(|x| *x = 0.0);
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n.saturating_sub(1) {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Eigenvalue-only reduction on a dense row-major copy. Each step applies the
/// Householder reflection to the full leading block, so every access is a row.
fn tridiagonalize_values(a: &[Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    let mut m: Vec<f64> = a.iter().flatten().copied().collect();
    let mut u = vec![0.0; n];
    let mut q = vec![0.0; n];
    for i in (1..n).rev() {
        let row = &m[i * n..i * n + i];
        let scale: f64 = row.iter().map(|x| x.abs()).sum();
        if i == 1 || scale == 0.0 {
            e[i] = m[i * n + i - 1];
            d[i] = m[i * n + i];
            continue;
        }
        let mut h = 0.0;
        for (uk, &x) in u[..i].iter_mut().zip(row) {
            *uk = x / scale;
            h += *uk * *uk;
        }
        let f = u[i - 1];
        let g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        u[i - 1] = f - g;
        let ui = &u[..i];
        let mut k = 0.0;
        for j in 0..i {
            let r = &m[j * n..j * n + i];
            q[j] = r.iter().zip(ui).map(|(x, y)| x * y).sum::<f64>() / h;
            k += ui[j] * q[j];
        }
        let k = k / (2.0 * h);
        for j in 0..i {
            q[j] -= k * ui[j];
        }
        for j in 0..i {
            let (uj, qj) = (ui[j], q[j]);
            let r = &mut m[j * n..j * n + i];
            for ((x, &uk), &qk) in r.iter_mut().zip(ui).zip(&q[..i]) {
                *x -= qj * uk + uj * qk;
            }
        }
        d[i] = m[i * n + i];
    }
    d[0] = m[0];
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal (d, e); rotations are applied to `v` when given.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut v: Option<&mut [Vec<f64>]>) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in d[l + 2..].iter_mut() {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = v.as_deref_mut() {
                        for row in v.iter_mut() {
                            h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Full decomposition of a symmetric matrix given row by row.
pub fn symmetric_eigen(a: &[Vec<f64>], want_vectors: bool) -> Result<Decomposition> {
    let n = a.len();
    if n == 0 {
        return Ok(Decomposition {
            values: Vec::new(),
            vectors: want_vectors.then(Vec::new),
        });
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v: Vec<Vec<f64>> = Vec::new();
    if want_vectors {
        v = a.to_vec();
        tridiagonalize(&mut v, &mut d, &mut e);
        ql_implicit(&mut d, &mut e, Some(&mut v))?;
    } else {
        tridiagonalize_values(a, &mut d, &mut e);
        ql_implicit(&mut d, &mut e, None)?;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = want_vectors.then(|| {
        v.iter()
            .map(|row| order.iter().map(|&i| row[i]).collect())
            .collect()
    });
    Ok(Decomposition { values, vectors })
}
