//! Laplacian spectra of field graphs.

mod eigen;

pub use eigen::{symmetric_eigen, Decomposition};

use std::f64::consts::PI;

use serde::Serialize;

use crate::algo::{components, diameter};
use crate::error::{Error, Result};
use crate::field::{is_prime, parse_poly, FieldModel};
use crate::graph::{build_digraph, to_undirected, FieldGraph};

/// Default absolute solver tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for "is this value in the spectrum".
pub const MEMBERSHIP_TOL: f64 = 1e-6;

/// L = D - A with multiplicities; loops contribute nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct Laplacian {
    pub rows: Vec<Vec<f64>>,
}

impl Laplacian {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.rows[i][i]).sum()
    }

    pub fn apply(&self, g: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(g).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

pub fn laplacian(g: &FieldGraph) -> Result<Laplacian> {
    if g.directed {
        return Err(Error::DirectedInput);
    }
    let n = g.n;
    let mut rows = vec![vec![0.0; n]; n];
    for e in &g.edges {
        if e.from == e.to {
            continue;
        }
        rows[e.from][e.to] -= 1.0;
        rows[e.to][e.from] -= 1.0;
        rows[e.from][e.from] += 1.0;
        rows[e.to][e.to] += 1.0;
    }
    Ok(Laplacian { rows })
}

/// Ascending eigenvalues with the tolerance they were computed under.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    pub fn contains(&self, value: f64, tol: f64) -> bool {
        self.multiplicity(value, tol) > 0
    }

    pub fn multiplicity(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| (x - value).abs() <= tol).count()
    }

    /// Second smallest eigenvalue.
    pub fn lambda1(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }

    /// `index,eigenvalue` with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue\n");
        for (i, x) in self.eigenvalues.iter().enumerate() {
            out.push_str(&format!("{i},{}\n", format_sig(*x, 12)));
        }
        out
    }
}

/// `x` rounded to `sig` significant digits, plain decimal when reasonable.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (_, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-5..sig as i32).contains(&exp) {
        return sci;
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn eigenvalues(l: &Laplacian, tol: f64) -> Result<Spectrum> {
    let n = l.n();
    let scale = l.norm_inf().max(1.0);
    for i in 0..n {
        if l.rows[i].len() != n {
            return Err(Error::Asymmetric);
        }
        for j in 0..i {
            if (l.rows[i][j] - l.rows[j][i]).abs() > tol * scale {
                return Err(Error::Asymmetric);
            }
        }
    }
    let dec = symmetric_eigen(&l.rows, false)?;
    Ok(Spectrum {
        eigenvalues: dec.values,
        tol,
    })
}

/// Spectrum of the undirected field graph of a model.
pub fn model_spectrum(model: &FieldModel) -> Result<Spectrum> {
    let g = to_undirected(&build_digraph(model));
    eigenvalues(&laplacian(&g)?, DEFAULT_TOL)
}

/// Second smallest Laplacian eigenvalue of a connected undirected graph.
pub fn lambda1(g: &FieldGraph) -> Result<f64> {
    let comps = components(g);
    if comps.len() > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let s = eigenvalues(&laplacian(g)?, DEFAULT_TOL)?;
    Ok(s.lambda1().unwrap_or(0.0))
}

/// The x^2 + 1 eigenvalue 8 sin^2(pi l / p).
pub fn explicit_eigenvalue(p: u32, l: u32) -> f64 {
    let s = (PI * l as f64 / p as f64).sin();
    8.0 * s * s
}

fn check_three_mod_four(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p % 4 != 3 {
        return Err(Error::NotThreeModFour(p));
    }
    Ok(())
}

fn x2_plus_1(p: u32) -> Result<FieldModel> {
    FieldModel::new(&parse_poly("x^2+1", p)?)
}

/// Applies the Laplacian of X_{x^2+1} over F_p to
/// g(v + i w) = 4 cos(2 pi l v / p) cos(2 pi l w / p)
/// and checks Δg = 8 sin^2(pi l / p) g at every vertex to 1e-9.
pub fn verify_explicit_eigenfunction(p: u32, l: u32) -> Result<f64> {
    check_three_mod_four(p)?;
    let model = x2_plus_1(p)?;
    let lap = laplacian(&to_undirected(&build_digraph(&model)))?;
    let pf = p as f64;
    let theta = 2.0 * PI * l as f64 / pf;
    // code of v + w x is v + w p
    let g: Vec<f64> = (0..model.order())
        .map(|code| {
            let (v, w) = ((code % p as u64) as f64, (code / p as u64) as f64);
            4.0 * (theta * v).cos() * (theta * w).cos()
        })
        .collect();
    if g.iter().all(|x| x.abs() < DEFAULT_TOL) {
        return Err(Error::VanishingEigenfunction { p, l });
    }
    let lambda = explicit_eigenvalue(p, l);
    let dg = lap.apply(&g);
    for (vertex, (a, b)) in dg.iter().zip(&g).enumerate() {
        let residual = (a - lambda * b).abs();
        if residual > DEFAULT_TOL {
            return Err(Error::EigenfunctionMismatch { vertex, residual });
        }
    }
    Ok(lambda)
}

/// λ1 against the lower bounds available for a model.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBounds {
    pub p: u32,
    pub k: usize,
    pub lambda1: f64,
    pub diameter: usize,
    /// 1 / (p^(k+1) (2k+1))
    pub general: f64,
    /// 1 / (p (2k+1) (p^k - 1))
    pub via_diameter_bound: f64,
    /// 2 / (D (p^k - 1)) with the computed diameter D
    pub via_diameter: f64,
    /// 4 sin^2(pi / p), only when x is normal
    pub normal: Option<f64>,
}

impl LowerBounds {
    /// Every applicable bound holds, allowing `tol` of solver error.
    pub fn holds(&self, tol: f64) -> bool {
        let l = self.lambda1 + tol;
        l >= self.general
            && l >= self.via_diameter_bound
            && l >= self.via_diameter
            && self.normal.map_or(true, |b| l >= b)
    }
}

pub fn check_lower_bounds(model: &FieldModel) -> Result<LowerBounds> {
    let g = to_undirected(&build_digraph(model));
    let d = diameter(&g)?;
    let lambda1 = eigenvalues(&laplacian(&g)?, DEFAULT_TOL)?
        .lambda1()
        .unwrap_or(0.0);
    let (p, k) = (model.p() as f64, model.k() as i32);
    let q1 = model.order() as f64 - 1.0;
    let two_k1 = 2.0 * k as f64 + 1.0;
    let normal = model.is_normal().then(|| {
        let s = (PI / p).sin();
        4.0 * s * s
    });
    Ok(LowerBounds {
        p: model.p(),
        k: model.k(),
        lambda1,
        diameter: d,
        general: 1.0 / (p.powi(k + 1) * two_k1),
        via_diameter_bound: 1.0 / (p * two_k1 * q1),
        via_diameter: if d == 0 { 0.0 } else { 2.0 / (d as f64 * q1) },
        normal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpanderRow {
    pub p: u32,
    pub lambda1: f64,
    /// 8 sin^2(pi / p)
    pub explicit: f64,
}

/// λ1 of X_{x^2+1} over F_p beside the explicit eigenvalue for l = 1.
pub fn expander_report(primes: &[u32]) -> Result<Vec<ExpanderRow>> {
    for &p in primes {
        check_three_mod_four(p)?;
    }
    use rayon::prelude::*;
    primes
        .par_iter()
        .map(|&p| {
            let model = x2_plus_1(p)?;
            let g = to_undirected(&build_digraph(&model));
            Ok(ExpanderRow {
                p,
                lambda1: lambda1(&g)?,
                explicit: explicit_eigenvalue(p, 1),
            })
        })
        .collect()
}
