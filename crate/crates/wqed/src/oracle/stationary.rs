//! Scattering amplitudes from a finite lattice, no closed forms involved.
//!
//! On a chain of sites -L ..= L the scattering state is fixed by the lattice
//! equations themselves. The two leftmost sites carry the incident-plus-
//! reflected wave `alpha_j = e^{ikj} + r e^{-ikj}`, the two rightmost the
//! transmitted wave `alpha_j = t e^{ikj}`; every interior amplitude plus the
//! emitter amplitudes and (r, t) are unknowns of one bordered linear system.
//! A traveling wave satisfies the free-site equation identically, so the
//! finite chain reproduces the infinite-chain amplitudes up to solver
//! roundoff, independent of L.

use super::lattice::{BasisState, LatticeProblem};
use super::OracleError;
use crate::model::make_point;
use nalgebra::DMatrix;
use num_complex::Complex64;

const EDGE_SIN_TOL: f64 = 1e-9;

/// Solved scattering state on the finite chain.
#[derive(Debug, Clone)]
pub struct StationarySolution {
    k: f64,
    alpha: Vec<Complex64>,
    beta: Complex64,
    zeta: Complex64,
    r_fit: Complex64,
    t_fit: Complex64,
    interior_residual: f64,
}

impl StationarySolution {
    /// Site amplitudes for j = -L ..= L.
    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn r_fit(&self) -> Complex64 {
        self.r_fit
    }

    pub fn t_fit(&self) -> Complex64 {
        self.t_fit
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Max lattice-equation residual over all checkable rows.
    pub fn interior_residual(&self) -> f64 {
        self.interior_residual
    }

    pub fn reflection(&self) -> f64 {
        self.r_fit.norm_sqr()
    }

    pub fn transmission(&self) -> f64 {
        self.t_fit.norm_sqr()
    }
}

/// Solve the bordered lattice system at momentum `k`.
pub fn solve_stationary(
    problem: &LatticeProblem,
    k: f64,
) -> Result<StationarySolution, OracleError> {
    let params = problem.params();
    let point = make_point(params, k);
    let k = point.k();
    if k.sin().abs() < EDGE_SIN_TOL {
        return Err(OracleError::BandEdge { k });
    }
    let half = problem.half_length() as i32;
    let has_top = problem.has_top_level();
    let n_interior = problem.site_count() - 4;
    let col_of_site = |j: i32| -> usize { (j + half - 2) as usize };
    let col_beta = n_interior;
    let col_zeta = col_beta + 1;
    let col_r = col_beta + 1 + usize::from(has_top);
    let col_t = col_r + 1;
    let dim = col_t + 1;

    let plane = |j: i32, sign: f64| Complex64::from_polar(1.0, sign * k * f64::from(j));
    let xi = params.xi();
    let diag = 2.0 * xi * k.cos();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let mut rhs = nalgebra::DVector::<Complex64>::zeros(dim);

    // one row per site that has both neighbours on the chain
    for j in -half + 1..=half - 1 {
        let row = (j + half - 1) as usize;
        for (site, coeff) in [(j - 1, -xi), (j, diag), (j + 1, -xi)] {
            if site <= -half + 1 {
                m[(row, col_r)] += coeff * plane(site, -1.0);
                rhs[row] -= coeff * plane(site, 1.0);
            } else if site >= half - 1 {
                m[(row, col_t)] += coeff * plane(site, 1.0);
            } else {
                m[(row, col_of_site(site))] += Complex64::from(coeff);
            }
        }
        if j == 0 {
            m[(row, col_beta)] += Complex64::from(params.g_a());
        }
    }
    let row_e2 = (2 * half - 1) as usize;
    m[(row_e2, col_of_site(0))] += Complex64::from(params.g_a());
    m[(row_e2, col_beta)] += Complex64::from(point.delta_a());
    if has_top {
        let gbn = params.control_coupling();
        m[(row_e2, col_zeta)] += Complex64::from(gbn);
        let row_e3 = row_e2 + 1;
        m[(row_e3, col_beta)] += Complex64::from(gbn);
        m[(row_e3, col_zeta)] += Complex64::from(point.delta_a() + point.delta_b());
    }

    let solved = m.lu().solve(&rhs).ok_or(OracleError::SingularSystem)?;
    let r_fit = solved[col_r];
    let t_fit = solved[col_t];
    let alpha: Vec<Complex64> = (-half..=half)
        .map(|j| {
            if j <= -half + 1 {
                plane(j, 1.0) + r_fit * plane(j, -1.0)
            } else if j >= half - 1 {
                t_fit * plane(j, 1.0)
            } else {
                solved[col_of_site(j)]
            }
        })
        .collect();
    let beta = solved[col_beta];
    let zeta = if has_top {
        solved[col_zeta]
    } else {
        Complex64::ZERO
    };

    let interior_residual = lattice_residual(problem, k, &alpha, beta, zeta);
    Ok(StationarySolution {
        k,
        alpha,
        beta,
        zeta,
        r_fit,
        t_fit,
        interior_residual,
    })
}

/// Residual of (H - E) psi over every row not touching the open ends,
/// evaluated through the sparse Hamiltonian rather than the assembled system.
fn lattice_residual(
    problem: &LatticeProblem,
    k: f64,
    alpha: &[Complex64],
    beta: Complex64,
    zeta: Complex64,
) -> f64 {
    let h = problem.hamiltonian();
    let dim = problem.dimension();
    let mut psi = vec![Complex64::ZERO; dim];
    psi[..alpha.len()].copy_from_slice(alpha);
    psi[problem.index_of(BasisState::Emitter2).unwrap()] = beta;
    if let Some(e3) = problem.index_of(BasisState::Emitter3) {
        psi[e3] = zeta;
    }
    let mut hpsi = vec![Complex64::ZERO; dim];
    h.apply(&psi, &mut hpsi);
    let energy = -2.0 * problem.params().xi() * k.cos();
    let mut worst: f64 = 0.0;
    for idx in 1..dim {
        if idx == alpha.len() - 1 {
            continue;
        }
        worst = worst.max((hpsi[idx] - energy * psi[idx]).norm());
    }
    worst
}
