//! Number-conserving product basis for `L` cavities, each holding one
//! two-level atom and one photon mode.
//!
//! States are ordered lexicographically in
//! `(photons[0], atoms[0], photons[1], atoms[1], ...)`, so for the dimer at
//! two excitations the canonical order is
//!
//! | index | photons | atoms | name  |
//! |-------|---------|-------|-------|
//! | 0     | (0, 1)  | (0, 1) | `I2` |
//! | 1     | (0, 2)  | (0, 0) | `C3` |
//! | 2     | (0, 0)  | (1, 1) | `A`  |
//! | 3     | (0, 1)  | (1, 0) | `I3` |
//! | 4     | (1, 0)  | (0, 1) | `I4` |
//! | 5     | (1, 1)  | (0, 0) | `C1` |
//! | 6     | (1, 0)  | (1, 0) | `I1` |
//! | 7     | (2, 0)  | (0, 0) | `C2` |
//!
//! See [`DimerState`] for the named states.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

/// One atom-photon configuration per site. `atoms[j]` is 0 for ground, 1
/// for excited.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisState {
    pub photons: Vec<u32>,
    pub atoms: Vec<u8>,
}

impl BasisState {
    pub fn new(photons: Vec<u32>, atoms: Vec<u8>) -> Result<Self> {
        if photons.len() != atoms.len() {
            return Err(Error::StateNotInSector(format!(
                "{} photon entries vs {} atom entries",
                photons.len(),
                atoms.len()
            )));
        }
        if atoms.iter().any(|&a| a > 1) {
            return Err(Error::StateNotInSector(
                "atom level must be 0 or 1".to_string(),
            ));
        }
        Ok(Self { photons, atoms })
    }

    pub fn sites(&self) -> usize {
        self.photons.len()
    }

    pub fn excitations(&self) -> u32 {
        self.photons.iter().sum::<u32>() + self.atoms.iter().map(|&a| a as u32).sum::<u32>()
    }

    /// Total excitations (photons plus atom) on one site.
    pub fn site_excitations(&self, site: usize) -> u32 {
        self.photons[site] + self.atoms[site] as u32
    }

    /// Lexicographic key `(p0, a0, p1, a1, ...)`.
    fn key(&self) -> Vec<u32> {
        self.photons
            .iter()
            .zip(&self.atoms)
            .flat_map(|(&p, &a)| [p, a as u32])
            .collect()
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (&p, &a)) in self.photons.iter().zip(&self.atoms).enumerate() {
            if j > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "|{}{}⟩", if a == 1 { 'e' } else { 'g' }, p)?;
        }
        Ok(())
    }
}

/// Enumerated basis at fixed site count and total excitation number.
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct Sector {
    sites: usize,
    excitations: u32,
    states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
}

impl Sector {
    /// Enumerates every configuration with `excitations` total quanta in
    /// canonical order. `sites` must be at least one.
    pub fn new(sites: usize, excitations: u32) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidParams(
                "sector needs at least one site".into(),
            ));
        }
        let mut states = Vec::new();
        let mut photons = vec![0u32; sites];
        let mut atoms = vec![0u8; sites];
        fill(0, excitations, &mut photons, &mut atoms, &mut states);
        debug_assert!(states.windows(2).all(|w| w[0].key() < w[1].key()));
        let index = states
            .iter()
            .enumerate()
            .map(|(k, s)| (s.clone(), k))
            .collect();
        Ok(Self {
            sites,
            excitations,
            states,
            index,
        })
    }

    /// The `L = 2`, `N = 2` sector used throughout the dimer analysis.
    pub fn dimer() -> Self {
        Self::new(2, 2).expect("dimer sector")
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn excitations(&self) -> u32 {
        self.excitations
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, k: usize) -> &BasisState {
        &self.states[k]
    }

    pub fn is_dimer(&self) -> bool {
        self.sites == 2 && self.excitations == 2
    }

    pub fn state_index(&self, state: &BasisState) -> Result<usize> {
        if state.sites() != self.sites {
            return Err(Error::StateNotInSector(format!(
                "{state} has {} sites, sector has {}",
                state.sites(),
                self.sites
            )));
        }
        if state.excitations() != self.excitations {
            return Err(Error::StateNotInSector(format!(
                "{state} carries {} excitations, sector has {}",
                state.excitations(),
                self.excitations
            )));
        }
        self.index
            .get(state)
            .copied()
            .ok_or_else(|| Error::StateNotInSector(state.to_string()))
    }

    pub(crate) fn lookup(&self, photons: &[u32], atoms: &[u8]) -> Option<usize> {
        self.index
            .get(&BasisState {
                photons: photons.to_vec(),
                atoms: atoms.to_vec(),
            })
            .copied()
    }

    /// JSON array of `{photons, atoms}` objects in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.states).expect("basis states serialize")
    }
}

fn fill(
    site: usize,
    remaining: u32,
    photons: &mut [u32],
    atoms: &mut [u8],
    out: &mut Vec<BasisState>,
) {
    let last = site + 1 == photons.len();
    for p in 0..=remaining {
        for a in 0..=1u8 {
            let used = p + a as u32;
            if used > remaining || (last && used != remaining) {
                continue;
            }
            photons[site] = p;
            atoms[site] = a;
            if last {
                out.push(BasisState {
                    photons: photons.to_vec(),
                    atoms: atoms.to_vec(),
                });
            } else {
                fill(site + 1, remaining - used, photons, atoms, out);
            }
        }
    }
    photons[site] = 0;
    atoms[site] = 0;
}

/// Named states of the dimer two-excitation sector.
///
/// `C*` are purely photonic, `A` purely atomic and `I*` hold one photon and
/// one atomic excitation:
///
/// * `C1 = |g1⟩⊗|g1⟩`, `C2 = |g2⟩⊗|g0⟩`, `C3 = |g0⟩⊗|g2⟩`
/// * `A = |e0⟩⊗|e0⟩`
/// * `I1 = |e1⟩⊗|g0⟩`, `I2 = |g0⟩⊗|e1⟩`, `I3 = |e0⟩⊗|g1⟩`, `I4 = |g1⟩⊗|e0⟩`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimerState {
    C1,
    C2,
    C3,
    A,
    I1,
    I2,
    I3,
    I4,
}

impl DimerState {
    pub const ALL: [DimerState; 8] = [
        DimerState::C1,
        DimerState::C2,
        DimerState::C3,
        DimerState::A,
        DimerState::I1,
        DimerState::I2,
        DimerState::I3,
        DimerState::I4,
    ];

    pub fn basis_state(self) -> BasisState {
        let (photons, atoms) = match self {
            DimerState::C1 => ([1, 1], [0, 0]),
            DimerState::C2 => ([2, 0], [0, 0]),
            DimerState::C3 => ([0, 2], [0, 0]),
            DimerState::A => ([0, 0], [1, 1]),
            DimerState::I1 => ([1, 0], [1, 0]),
            DimerState::I2 => ([0, 1], [0, 1]),
            DimerState::I3 => ([0, 1], [1, 0]),
            DimerState::I4 => ([1, 0], [0, 1]),
        };
        BasisState {
            photons: photons.to_vec(),
            atoms: atoms.to_vec(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DimerState::C1 => "c1",
            DimerState::C2 => "c2",
            DimerState::C3 => "c3",
            DimerState::A => "a",
            DimerState::I1 => "i1",
            DimerState::I2 => "i2",
            DimerState::I3 => "i3",
            DimerState::I4 => "i4",
        }
    }

    /// Position in the canonical dimer ordering.
    pub fn index(self) -> usize {
        match self {
            DimerState::I2 => 0,
            DimerState::C3 => 1,
            DimerState::A => 2,
            DimerState::I3 => 3,
            DimerState::I4 => 4,
            DimerState::C1 => 5,
            DimerState::I1 => 6,
            DimerState::C2 => 7,
        }
    }
}
