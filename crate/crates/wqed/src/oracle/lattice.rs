//! Single-excitation basis and Hamiltonian on a finite chain.
//!
//! States: one photon on site j with the emitter in its ground level and n
//! control photons; or no chain photon with the emitter in the middle level
//! (still n control photons); or in the top level (one control photon
//! absorbed). For n = 0 the top level is unreachable and is excluded.
//!
//! The Hamiltonian is stored in the frame shifted by omega_a + n omega_b, so
//! chain sites sit at zero energy and a momentum-k wave has energy
//! -2 xi cos k.

use crate::model::ModelParams;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisState {
    /// Photon on chain site j (emitter idle).
    Site(i32),
    /// Emitter in the middle level, chain and control field unchanged.
    Emitter2,
    /// Emitter in the top level, one control photon consumed.
    Emitter3,
}

/// Finite chain of sites -half_length ..= half_length with the emitter
/// coupled at site 0.
#[derive(Debug, Clone)]
pub struct LatticeProblem {
    params: ModelParams,
    half_length: usize,
}

impl LatticeProblem {
    pub fn new(params: ModelParams, half_length: usize) -> Result<Self, super::OracleError> {
        if half_length < 10 {
            return Err(super::OracleError::InvalidProblem(format!(
                "half_length = {half_length} is too short; need at least 10 sites per side"
            )));
        }
        Ok(LatticeProblem {
            params,
            half_length,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn half_length(&self) -> usize {
        self.half_length
    }

    pub fn site_count(&self) -> usize {
        2 * self.half_length + 1
    }

    /// True when the top emitter level participates (n >= 1).
    pub fn has_top_level(&self) -> bool {
        self.params.n() >= 1
    }

    pub fn dimension(&self) -> usize {
        self.site_count() + 1 + usize::from(self.has_top_level())
    }

    pub fn index_of(&self, state: BasisState) -> Option<usize> {
        let half = self.half_length as i32;
        match state {
            BasisState::Site(j) if (-half..=half).contains(&j) => Some((j + half) as usize),
            BasisState::Site(_) => None,
            BasisState::Emitter2 => Some(self.site_count()),
            BasisState::Emitter3 => self.has_top_level().then(|| self.site_count() + 1),
        }
    }

    pub fn state_of(&self, index: usize) -> Option<BasisState> {
        let half = self.half_length as i32;
        if index < self.site_count() {
            Some(BasisState::Site(index as i32 - half))
        } else if index == self.site_count() {
            Some(BasisState::Emitter2)
        } else if index == self.site_count() + 1 && self.has_top_level() {
            Some(BasisState::Emitter3)
        } else {
            None
        }
    }

    /// Hamiltonian in the shifted frame (real symmetric).
    pub fn hamiltonian(&self) -> SparseHamiltonian {
        let p = &self.params;
        let dim = self.dimension();
        let mut entries = Vec::with_capacity(3 * dim);
        // hopping
        for a in 0..self.site_count() - 1 {
            entries.push((a, a + 1, -p.xi()));
            entries.push((a + 1, a, -p.xi()));
        }
        let e2 = self.index_of(BasisState::Emitter2).unwrap();
        let site0 = self.index_of(BasisState::Site(0)).unwrap();
        entries.push((e2, e2, p.omega_2() - p.omega_a()));
        if p.g_a() != 0.0 {
            entries.push((site0, e2, p.g_a()));
            entries.push((e2, site0, p.g_a()));
        }
        if let Some(e3) = self.index_of(BasisState::Emitter3) {
            entries.push((e3, e3, p.omega_3() - p.omega_b() - p.omega_a()));
            let gbn = p.control_coupling();
            if gbn != 0.0 {
                entries.push((e2, e3, gbn));
                entries.push((e3, e2, gbn));
            }
        }
        SparseHamiltonian { dim, entries }
    }
}

/// Triplet-form sparse matrix; every nonzero appears exactly once.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseHamiltonian {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    /// out = H v.
    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(v.len(), self.dim);
        assert_eq!(out.len(), self.dim);
        out.fill(Complex64::ZERO);
        for &(row, col, val) in &self.entries {
            out[row] += val * v[col];
        }
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim, self.dim);
        for &(row, col, val) in &self.entries {
            m[(row, col)] += val;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RawModelParams;

    fn problem(n: u32, half: usize) -> LatticeProblem {
        let p = RawModelParams {
            omega_a: 0.5,
            omega_b: 1.0,
            omega_2: 2.0,
            omega_3: 3.0,
            xi: 2.0,
            g_a: 1.0,
            g_b: 0.7,
            n,
        }
        .validate()
        .unwrap();
        LatticeProblem::new(p, half).unwrap()
    }

    #[test]
    fn dimension_tracks_top_level() {
        assert_eq!(problem(0, 10).dimension(), 22);
        assert_eq!(problem(1, 10).dimension(), 23);
        assert_eq!(problem(4, 12).dimension(), 27);
    }

    #[test]
    fn index_round_trip() {
        let pr = problem(2, 11);
        for idx in 0..pr.dimension() {
            let state = pr.state_of(idx).unwrap();
            assert_eq!(pr.index_of(state), Some(idx));
        }
        assert_eq!(pr.index_of(BasisState::Site(12)), None);
        assert_eq!(problem(0, 11).index_of(BasisState::Emitter3), None);
    }

    #[test]
    fn short_chain_rejected() {
        let p = RawModelParams::default().validate().unwrap();
        assert!(LatticeProblem::new(p, 9).is_err());
    }

    #[test]
    fn hamiltonian_is_symmetric_with_expected_elements() {
        let pr = problem(2, 10);
        let h = pr.hamiltonian().to_dense();
        assert_eq!(h.nrows(), 23);
        assert!((h.clone() - h.transpose()).abs().max() == 0.0);
        let site0 = pr.index_of(BasisState::Site(0)).unwrap();
        let left = pr.index_of(BasisState::Site(-1)).unwrap();
        let e2 = pr.index_of(BasisState::Emitter2).unwrap();
        let e3 = pr.index_of(BasisState::Emitter3).unwrap();
        assert_eq!(h[(site0, site0)], 0.0);
        assert_eq!(h[(site0, left)], -2.0);
        assert_eq!(h[(site0, e2)], 1.0);
        assert_eq!(h[(e2, e2)], 1.5);
        // g_b sqrt(2)
        assert!((h[(e2, e3)] - 0.7 * 2.0f64.sqrt()).abs() < 1e-15);
        // omega_3 - omega_b - omega_a
        assert_eq!(h[(e3, e3)], 1.5);
    }

    #[test]
    fn apply_matches_dense_multiply() {
        let pr = problem(3, 10);
        let h = pr.hamiltonian();
        let dense = h.to_dense();
        let dim = pr.dimension();
        let v: Vec<Complex64> = (0..dim)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.61).cos()))
            .collect();
        let mut out = vec![Complex64::ZERO; dim];
        h.apply(&v, &mut out);
        for row in 0..dim {
            let mut expect = Complex64::ZERO;
            for col in 0..dim {
                expect += dense[(row, col)] * v[col];
            }
            assert!((out[row] - expect).norm() < 1e-13);
        }
    }
}
