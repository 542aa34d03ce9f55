//! Coupled-cavity Hamiltonian and diagonal observables as real symmetric
//! sparse matrices on a [`Sector`].
//!
//! In the rotating-wave form the Hamiltonian is
//!
//! ```text
//! H = Σ_j [ω_c a†_j a_j + ω_a |e_j⟩⟨e_j| + g (a†_j σ⁻_j + a_j σ⁺_j)]
//!   + A Σ_{⟨i,j⟩} (a†_i a_j + a†_j a_i)
//! ```
//!
//! with `ω_a = ω_c + Δ`. Every matrix element is real in the atom-photon
//! product basis.

use crate::error::{Error, Result};
use crate::hilbert::Sector;
use crate::scalar::Scalar;
use std::io::Write;

/// Physical parameters. All energies share one unit; `ħ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<T> {
    pub omega_c: T,
    /// Detuning `ω_a − ω_c`.
    pub delta: T,
    pub g: T,
    pub hop: T,
    /// Undirected coupled site pairs. `None` means the open nearest-neighbour
    /// chain `(0,1), (1,2), ...`.
    pub hop_graph: Option<Vec<(usize, usize)>>,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(omega_c: T, delta: T, g: T, hop: T) -> Self {
        Self {
            omega_c,
            delta,
            g,
            hop,
            hop_graph: None,
        }
    }

    /// Parameters with `ω_c` fixed by the ratio `g / ω_a`, where
    /// `ω_a = ω_c + Δ`.
    pub fn with_coupling_ratio(g_over_omega_a: T, delta: T, g: T, hop: T) -> Self {
        let omega_a = g / g_over_omega_a;
        Self::new(omega_a - delta, delta, g, hop)
    }

    pub fn omega_a(&self) -> T {
        self.omega_c + self.delta
    }

    /// Same physics with `ω_c = 0`. Spectra shift by `N ω_c`; eigenvectors
    /// are unchanged.
    pub fn gauge_reduced(&self) -> Self {
        Self {
            omega_c: T::zero(),
            ..self.clone()
        }
    }

    pub fn validate(&self, sites: usize) -> Result<()> {
        let finite = [self.omega_c, self.delta, self.g, self.hop]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.g < T::zero() {
            return Err(Error::InvalidParams(format!(
                "g must be >= 0, got {}",
                self.g
            )));
        }
        if self.hop < T::zero() {
            return Err(Error::InvalidParams(format!(
                "hopping must be >= 0, got {}",
                self.hop
            )));
        }
        let pairs = self.pairs(sites);
        let mut seen = std::collections::HashSet::new();
        for &(i, j) in &pairs {
            if i == j {
                return Err(Error::InvalidParams(format!(
                    "self-loop ({i},{j}) in hop graph"
                )));
            }
            if i >= sites || j >= sites {
                return Err(Error::InvalidParams(format!(
                    "hop pair ({i},{j}) out of range for {sites} sites"
                )));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidParams(format!(
                    "duplicate hop pair ({i},{j})"
                )));
            }
        }
        Ok(())
    }

    fn pairs(&self, sites: usize) -> Vec<(usize, usize)> {
        match &self.hop_graph {
            Some(p) => p.clone(),
            None => (1..sites).map(|j| (j - 1, j)).collect(),
        }
    }
}

/// Real symmetric matrix with each off-diagonal pair stored once
/// (`row <= col`). Entries are sorted and coalesced.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T> {
    dim: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> SparseOperator<T> {
    /// Builds from arbitrary triplets. Lower-triangle entries are mirrored
    /// to the upper triangle; duplicates are summed.
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, T)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.max(c) + 1,
                });
            }
            entries.push((r.min(c), r.max(c), v));
        }
        entries.sort_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(usize, usize, T)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != T::zero());
        Ok(Self {
            dim,
            entries: merged,
        })
    }

    pub fn diagonal(values: &[T]) -> Self {
        Self::from_triplets(
            values.len(),
            values.iter().enumerate().map(|(k, &v)| (k, k, v)),
        )
        .expect("diagonal in range")
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![T::one(); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Upper-triangle entries `(row, col, value)` with `row <= col`.
    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        let mut y = vec![T::zero(); self.dim];
        self.apply_into(x, &mut y)?;
        Ok(y)
    }

    /// `y = H x`, overwriting `y`.
    pub fn apply_into(&self, x: &[T], y: &mut [T]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        y.iter_mut().for_each(|v| *v = T::zero());
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
            if r != c {
                y[c] += v * x[r];
            }
        }
        Ok(())
    }

    /// `⟨x|H|x⟩`
    pub fn expectation(&self, x: &[T]) -> Result<T> {
        let hx = self.apply(x)?;
        Ok(crate::scalar::dot(x, &hx))
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.dim]; self.dim];
        for &(r, c, v) in &self.entries {
            m[r][c] = v;
            m[c][r] = v;
        }
        m
    }

    /// Frobenius norm of the full symmetric matrix.
    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, &(r, c, v)| {
                acc + if r == c { v * v } else { T::lit(2.0) * v * v }
            })
            .sqrt()
    }

    /// Max absolute row sum; an upper bound on the spectral radius.
    pub fn inf_norm(&self) -> T {
        let mut rows = vec![T::zero(); self.dim];
        for &(r, c, v) in &self.entries {
            rows[r] += v.abs();
            if r != c {
                rows[c] += v.abs();
            }
        }
        rows.into_iter().fold(T::zero(), T::max)
    }

    /// Coordinate-format dump: one `row col value` line per stored
    /// (upper-triangle) entry.
    pub fn write_coo<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for &(r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v:e}")?;
        }
        Ok(())
    }
}

/// Builds `H` on `sector`.
pub fn build_hamiltonian<T: Scalar>(
    sector: &Sector,
    params: &ModelParams<T>,
) -> Result<SparseOperator<T>> {
    let sites = sector.sites();
    params.validate(sites)?;
    let pairs = params.pairs(sites);
    let omega_a = params.omega_a();
    let mut triplets = Vec::new();

    for (k, state) in sector.states().iter().enumerate() {
        let mut diag = T::zero();
        for j in 0..sites {
            diag += params.omega_c * T::lit(state.photons[j] as f64);
            if state.atoms[j] == 1 {
                diag += omega_a;
            }
        }
        triplets.push((k, k, diag));

        if params.g != T::zero() {
            // |e, n⟩ → |g, n+1⟩ with amplitude g √(n+1); the reverse is the
            // mirrored entry.
            for j in 0..sites {
                if state.atoms[j] != 1 {
                    continue;
                }
                let mut photons = state.photons.clone();
                let mut atoms = state.atoms.clone();
                photons[j] += 1;
                atoms[j] = 0;
                let target = sector
                    .lookup(&photons, &atoms)
                    .expect("atom-field term conserves excitations");
                let amp = params.g * T::lit(photons[j] as f64).sqrt();
                triplets.push((k, target, amp));
            }
        }

        if params.hop != T::zero() {
            // Move one photon src → dst. Each unordered pair of states is
            // reached from both ends; keep the one with target > k.
            for &(a, b) in &pairs {
                for (src, dst) in [(a, b), (b, a)] {
                    let n_src = state.photons[src];
                    if n_src == 0 {
                        continue;
                    }
                    let n_dst = state.photons[dst];
                    let mut photons = state.photons.clone();
                    photons[src] -= 1;
                    photons[dst] += 1;
                    let target = sector
                        .lookup(&photons, &state.atoms)
                        .expect("hopping conserves excitations");
                    if target > k {
                        let amp = params.hop * T::lit(((n_dst + 1) * n_src) as f64).sqrt();
                        triplets.push((k, target, amp));
                    }
                }
            }
        }
    }
    SparseOperator::from_triplets(sector.dim(), triplets)
}

fn check_site(sector: &Sector, site: usize) -> Result<()> {
    if site >= sector.sites() {
        return Err(Error::SiteOutOfRange {
            site,
            sites: sector.sites(),
        });
    }
    Ok(())
}

/// `N_j = a†_j a_j + |e_j⟩⟨e_j|`
pub fn build_number_operator<T: Scalar>(sector: &Sector, site: usize) -> Result<SparseOperator<T>> {
    check_site(sector, site)?;
    let diag: Vec<T> = sector
        .states()
        .iter()
        .map(|s| T::lit(s.site_excitations(site) as f64))
        .collect();
    Ok(SparseOperator::diagonal(&diag))
}

/// `N_{A,j} = |e_j⟩⟨e_j|`
pub fn build_atomic_number_operator<T: Scalar>(
    sector: &Sector,
    site: usize,
) -> Result<SparseOperator<T>> {
    check_site(sector, site)?;
    let diag: Vec<T> = sector
        .states()
        .iter()
        .map(|s| T::lit(s.atoms[site] as f64))
        .collect();
    Ok(SparseOperator::diagonal(&diag))
}

/// `a†_j a_j`
pub fn build_photon_number_operator<T: Scalar>(
    sector: &Sector,
    site: usize,
) -> Result<SparseOperator<T>> {
    check_site(sector, site)?;
    let diag: Vec<T> = sector
        .states()
        .iter()
        .map(|s| T::lit(s.photons[site] as f64))
        .collect();
    Ok(SparseOperator::diagonal(&diag))
}
