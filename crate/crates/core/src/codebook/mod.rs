//! Finite codebooks in `PU_n` and their constructions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::{canonicalize_unitary, matrix_distance, PhaseClass, UnitaryMatrix};

pub mod families;
pub mod gates;
pub mod io;
pub mod pauli;

pub use families::{
    clifford_codebook, clifford_s_codebook, clifford_s_codebook_with, clifford_t_bfs,
    clifford_t_codebook, diagonal_hierarchy_codebook, semi_clifford_codebook,
    semi_clifford_readings, FourthLevelSteps, SemiCliffordReadings,
};
pub use pauli::{
    completeness_check, conjugation_overlap, heisenberg_weyl_basis, hw_matrix, pauli_codebook,
    HWLabel,
};

/// Distance below which two entries sharing a key are the same class.
pub const SAME_CLASS_TOL: f64 = 1e-6;

/// Codebook family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Pauli,
    Clifford,
    DiagHierarchy,
    SemiClifford,
    CliffordT,
    CliffordS,
    Custom,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Pauli,
        Kind::Clifford,
        Kind::DiagHierarchy,
        Kind::SemiClifford,
        Kind::CliffordT,
        Kind::CliffordS,
        Kind::Custom,
    ];

    pub fn code(self) -> u8 {
        match self {
            Kind::Pauli => 0,
            Kind::Clifford => 1,
            Kind::DiagHierarchy => 2,
            Kind::SemiClifford => 3,
            Kind::CliffordT => 4,
            Kind::CliffordS => 5,
            Kind::Custom => 6,
        }
    }

    pub fn from_code(code: u8) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.code() == code)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Pauli => "pauli",
            Kind::Clifford => "clifford",
            Kind::DiagHierarchy => "diag_hierarchy",
            Kind::SemiClifford => "semi_clifford",
            Kind::CliffordT => "clifford_t",
            Kind::CliffordS => "clifford_s",
            Kind::Custom => "custom",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('-', "_");
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "diag" && *k == Kind::DiagHierarchy))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown codebook kind '{s}'")))
    }
}

/// Key → element map with collision verification.
#[derive(Clone, Debug)]
pub struct DedupIndex {
    quantum: f64,
    map: HashMap<Vec<u8>, Vec<usize>>,
    elements: Vec<PhaseClass>,
}

impl DedupIndex {
    pub fn new(quantum: f64) -> Self {
        Self {
            quantum,
            map: HashMap::new(),
            elements: Vec::new(),
        }
    }

    pub fn quantum(&self) -> f64 {
        self.quantum
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PhaseClass] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<PhaseClass> {
        self.elements
    }

    /// Validates and inserts; returns whether the class was new and its id.
    pub fn insert(&mut self, m: &CMatrix) -> Result<(bool, usize)> {
        let u = UnitaryMatrix::new(m.clone())?;
        Ok(self.insert_unitary(&u))
    }

    /// Inserts a matrix already known to be unitary.
    pub fn insert_unitary(&mut self, u: &UnitaryMatrix) -> (bool, usize) {
        let class = canonicalize_unitary(u, self.quantum);
        self.insert_class(class)
    }

    pub(crate) fn insert_class(&mut self, class: PhaseClass) -> (bool, usize) {
        if let Some(id) = self.find(&class) {
            return (false, id);
        }
        let id = self.elements.len();
        self.map.entry(class.key().to_vec()).or_default().push(id);
        self.elements.push(class);
        (true, id)
    }

    /// Id of a stored element of the same class, if any. Bucket members are
    /// confirmed by distance so a key collision cannot merge two classes.
    pub fn find(&self, class: &PhaseClass) -> Option<usize> {
        self.map.get(class.key()).and_then(|bucket| {
            bucket.iter().copied().find(|&id| {
                matrix_distance(self.elements[id].matrix(), class.matrix())
                    .map(|d| d < SAME_CLASS_TOL)
                    .unwrap_or(false)
            })
        })
    }

    pub fn contains_matrix(&self, m: &UnitaryMatrix) -> bool {
        self.find(&canonicalize_unitary(m, self.quantum)).is_some()
    }
}

/// A labelled, deduplicated set of `PU_n` classes.
#[derive(Clone, Debug)]
pub struct Codebook {
    pub kind: Kind,
    /// Qubit count; `n = 2^m`.
    pub m: usize,
    /// Hierarchy level `k` or gate-count cap `l`, where the family has one.
    pub param: Option<u32>,
    pub is_group: bool,
    pub quantum: f64,
    elements: Vec<PhaseClass>,
}

impl Codebook {
    pub(crate) fn from_index(
        kind: Kind,
        m: usize,
        param: Option<u32>,
        index: DedupIndex,
        is_group: bool,
    ) -> Result<Self> {
        let quantum = index.quantum();
        Ok(Self {
            kind,
            m,
            param,
            is_group,
            quantum,
            elements: index.into_elements(),
        })
    }

    /// A codebook of arbitrary classes. Duplicates are dropped.
    pub fn custom(m: usize, matrices: &[CMatrix], quantum: f64) -> Result<Self> {
        let n = 1usize << m;
        let mut index = DedupIndex::new(quantum);
        for mat in matrices {
            if mat.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: mat.dim(),
                    right: n,
                });
            }
            index.insert(mat)?;
        }
        Self::from_index(Kind::Custom, m, None, index, false)
    }

    pub fn n(&self) -> usize {
        1 << self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PhaseClass] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> Option<&PhaseClass> {
        self.elements.get(i)
    }

    /// Fresh dedup index over the elements, for membership queries.
    pub fn index(&self) -> DedupIndex {
        let mut index = DedupIndex::new(self.quantum);
        for e in &self.elements {
            index.insert_class(e.clone());
        }
        index
    }

    /// Closed-form cardinality of the family, if it has one.
    pub fn expected_cardinality(&self) -> Option<u128> {
        bounds::family_cardinality(self.kind, self.m, self.param).ok()
    }

    /// Compares the element count with the closed form.
    pub fn cardinality_report(&self) -> CardinalityReport {
        CardinalityReport {
            kind: self.kind,
            m: self.m,
            param: self.param,
            observed: self.len() as u128,
            expected: self.expected_cardinality(),
        }
    }
}

/// Observed versus closed-form cardinality.
#[derive(Clone, Debug, Serialize)]
pub struct CardinalityReport {
    pub kind: Kind,
    pub m: usize,
    pub param: Option<u32>,
    pub observed: u128,
    pub expected: Option<u128>,
}

impl CardinalityReport {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.observed)
    }
}
