//! Clifford, diagonal-hierarchy, semi-Clifford and product codebooks.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::gates::{cnot, hadamard, on_qubit, s_gate, sqrt_t_gate, t_gate};
use super::{Codebook, DedupIndex, Kind};
use crate::bounds::family_cardinality;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pu::{UnitaryMatrix, DEFAULT_QUANTUM};

/// Largest diagonal group the builder will enumerate.
pub const MAX_DIAGONAL_ELEMENTS: u128 = 1 << 20;

fn expected(kind: Kind, m: usize, param: Option<u32>) -> Result<usize> {
    let count = family_cardinality(kind, m, param)?;
    usize::try_from(count)
        .map_err(|_| Error::Unsupported(format!("{kind} cardinality {count} does not fit memory")))
}

/// Breadth-first closure of `gens` starting at the identity. Fails as soon
/// as the closure grows past `limit`.
fn closure(gens: &[UnitaryMatrix], limit: usize, what: &str) -> Result<DedupIndex> {
    let n = gens[0].dim();
    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    let mut queue = VecDeque::new();
    let id = UnitaryMatrix::identity(n);
    index.insert_unitary(&id);
    queue.push_back(id);
    while let Some(u) = queue.pop_front() {
        for g in gens {
            let v = g.compose(&u);
            if index.insert_unitary(&v).0 {
                if index.len() > limit {
                    return Err(Error::Consistency(format!(
                        "{what} closure exceeded its closed-form size {limit}"
                    )));
                }
                queue.push_back(v);
            }
        }
    }
    Ok(index)
}

fn unitary(m: CMatrix) -> UnitaryMatrix {
    UnitaryMatrix::new(m).expect("gate constructors produce unitaries")
}

fn clifford_generators(m: usize) -> Vec<UnitaryMatrix> {
    let mut gens = Vec::new();
    for q in 0..m {
        gens.push(unitary(on_qubit(&hadamard(), q, m)));
        gens.push(unitary(on_qubit(&s_gate(), q, m)));
    }
    for c in 0..m {
        for t in 0..m {
            if c != t {
                gens.push(unitary(cnot(c, t, m)));
            }
        }
    }
    gens
}

/// Projective Clifford group on `m ∈ {1, 2}` qubits, generated by `H`, `S`
/// and `CNOT`. The closed-form order is the termination certificate.
pub fn clifford_codebook(m: usize) -> Result<Codebook> {
    if !(1..=2).contains(&m) {
        return Err(Error::Unsupported(format!(
            "Clifford codebook needs m in 1..=2, got {m}"
        )));
    }
    let target = expected(Kind::Clifford, m, None)?;
    let index = closure(&clifford_generators(m), target, "Clifford")?;
    if index.len() != target {
        return Err(Error::Consistency(format!(
            "Clifford closure on {m} qubits has {} classes, expected {target}",
            index.len()
        )));
    }
    Codebook::from_index(Kind::Clifford, m, None, index, true)
}

/// Diagonal generators of level `k` on `m` qubits: `exp(iπZ_q/2^k)` and the
/// `j`-controlled `exp(iπZ/2^{k−j})` for `j ≤ min(k−1, m−1)`, over every
/// control set and target.
fn diagonal_generators(m: usize, k: u32) -> Vec<Vec<C64>> {
    let n = 1usize << m;
    let top = (k as usize - 1).min(m - 1);
    let mut gens = Vec::new();
    for j in 0..=top {
        let alpha = PI / f64::powi(2.0, k as i32 - j as i32);
        for support in 0..(1usize << m) {
            if support.count_ones() as usize != j + 1 {
                continue;
            }
            for target in (0..m).filter(|&q| support >> (m - 1 - q) & 1 == 1) {
                let controls = support & !(1 << (m - 1 - target));
                let diag = (0..n)
                    .map(|x| {
                        if x & controls != controls {
                            C64::new(1.0, 0.0)
                        } else if super::gates::bit(x, target, m) == 0 {
                            C64::from_polar(1.0, alpha)
                        } else {
                            C64::from_polar(1.0, -alpha)
                        }
                    })
                    .collect();
                gens.push(diag);
            }
        }
    }
    gens
}

/// Projective diagonal part of level `k` of the Clifford hierarchy.
pub fn diagonal_hierarchy_codebook(m: usize, k: u32) -> Result<Codebook> {
    if !(1..=3).contains(&m) || !(2..=8).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "diagonal hierarchy needs m in 1..=3 and k in 2..=8, got m={m}, k={k}"
        )));
    }
    let target = family_cardinality(Kind::DiagHierarchy, m, Some(k))?;
    if target > MAX_DIAGONAL_ELEMENTS {
        return Err(Error::Unsupported(format!(
            "diagonal hierarchy m={m}, k={k} has {target} elements"
        )));
    }
    let target = target as usize;
    let gens = diagonal_generators(m, k);
    let n = 1usize << m;
    // Closure on diagonal vectors; far cheaper than dense products.
    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    let mut queue = VecDeque::new();
    let one = vec![C64::new(1.0, 0.0); n];
    index.insert_unitary(&UnitaryMatrix::new_unchecked(CMatrix::from_diag(&one)));
    queue.push_back(one);
    while let Some(u) = queue.pop_front() {
        for g in &gens {
            let v: Vec<C64> = u.iter().zip(g).map(|(a, b)| a * b).collect();
            let mat = UnitaryMatrix::new_unchecked(CMatrix::from_diag(&v));
            if index.insert_unitary(&mat).0 {
                if index.len() > target {
                    return Err(Error::Consistency(format!(
                        "diagonal closure m={m}, k={k} exceeded {target}"
                    )));
                }
                queue.push_back(v);
            }
        }
    }
    if index.len() != target {
        return Err(Error::Consistency(format!(
            "diagonal closure m={m}, k={k} has {} classes, expected {target}",
            index.len()
        )));
    }
    Codebook::from_index(Kind::DiagHierarchy, m, Some(k), index, true)
}

fn check_level(k: u32) -> Result<()> {
    if !(2..=8).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "k must be in 2..=8, got {k}"
        )));
    }
    Ok(())
}

/// Single-qubit semi-Clifford codebook `{G₁·D·G₂}`.
///
/// A count that disagrees with the closed form is logged, not fatal; see
/// [`Codebook::cardinality_report`].
pub fn semi_clifford_codebook(k: u32) -> Result<Codebook> {
    check_level(k)?;
    let cliffords = clifford_codebook(1)?;
    let diagonal = diagonal_hierarchy_codebook(1, k)?;
    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    for g1 in cliffords.elements() {
        for d in diagonal.elements() {
            let gd = g1.rep().compose(d.rep());
            for g2 in cliffords.elements() {
                index.insert_unitary(&gd.compose(g2.rep()));
            }
        }
    }
    let cb = Codebook::from_index(Kind::SemiClifford, 1, Some(k), index, k == 2)?;
    let report = cb.cardinality_report();
    if !report.matches() {
        log::warn!(
            "semi-Clifford k={k}: observed {} classes, closed form {:?}",
            report.observed,
            report.expected
        );
    }
    Ok(cb)
}

/// Counts for the two readings of the semi-Clifford product.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SemiCliffordReadings {
    pub k: u32,
    /// `|{G₁·D·G₂}|` with independent Clifford factors.
    pub two_factor: usize,
    /// `|{G·D·G}|` with the same Clifford on both sides.
    pub one_factor: usize,
    pub formula: u128,
}

pub fn semi_clifford_readings(k: u32) -> Result<SemiCliffordReadings> {
    check_level(k)?;
    let two_factor = semi_clifford_codebook(k)?.len();
    let cliffords = clifford_codebook(1)?;
    let diagonal = diagonal_hierarchy_codebook(1, k)?;
    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    for g in cliffords.elements() {
        for d in diagonal.elements() {
            index.insert_unitary(&g.rep().compose(d.rep()).compose(g.rep()));
        }
    }
    Ok(SemiCliffordReadings {
        k,
        two_factor,
        one_factor: index.len(),
        formula: family_cardinality(Kind::SemiClifford, 1, Some(k))?,
    })
}

/// Largest `l` accepted for Clifford+T.
pub const MAX_T_COUNT: u32 = 15;

/// Single-qubit Clifford+T codebook with at most `l` T gates, enumerated in
/// normal form: a syllable from `{T, HT, SHT}`, then syllables from
/// `{HT, SHT}`, then a trailing Clifford. Every word must be a new class.
pub fn clifford_t_codebook(l: u32) -> Result<Codebook> {
    if l > MAX_T_COUNT {
        return Err(Error::InvalidParameter(format!(
            "T count must be at most {MAX_T_COUNT}, got {l}"
        )));
    }
    let target = expected(Kind::CliffordT, 1, Some(l))?;
    let cliffords = clifford_codebook(1)?;
    let t = unitary(t_gate());
    let ht = unitary(&hadamard() * &t_gate());
    let sht = unitary(&(&s_gate() * &hadamard()) * &t_gate());

    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    for c in cliffords.elements() {
        index.insert_unitary(c.rep());
    }
    let mut words = vec![t.clone(), ht.clone(), sht.clone()];
    for j in 1..=l {
        if j > 1 {
            words = words
                .iter()
                .flat_map(|w| [w.compose(&ht), w.compose(&sht)])
                .collect();
        }
        for w in &words {
            for c in cliffords.elements() {
                if !index.insert_unitary(&w.compose(c.rep())).0 {
                    return Err(Error::Consistency(format!(
                        "Clifford+T normal form repeated a class at T count {j}"
                    )));
                }
            }
        }
    }
    if index.len() != target {
        return Err(Error::Consistency(format!(
            "Clifford+T l={l} has {} classes, expected {target}",
            index.len()
        )));
    }
    Codebook::from_index(Kind::CliffordT, 1, Some(l), index, l == 0)
}

/// Level-by-level products `U·g·C` over the previous frontier, step gates
/// `g` and Cliffords `C`, deduplicated against everything seen so far.
fn layered_products(l: u32, steps: &[UnitaryMatrix]) -> Result<DedupIndex> {
    let cliffords = clifford_codebook(1)?;
    let mut index = DedupIndex::new(DEFAULT_QUANTUM);
    let mut frontier: Vec<UnitaryMatrix> = Vec::new();
    for c in cliffords.elements() {
        index.insert_unitary(c.rep());
        frontier.push(c.rep().clone());
    }
    for _ in 0..l {
        let mut next = Vec::new();
        for u in &frontier {
            for g in steps {
                let ug = u.compose(g);
                for c in cliffords.elements() {
                    let v = ug.compose(c.rep());
                    if index.insert_unitary(&v).0 {
                        next.push(v);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(index)
}

/// Clifford+T by layered products instead of normal form; used as a
/// cross-check of [`clifford_t_codebook`].
pub fn clifford_t_bfs(l: u32) -> Result<Codebook> {
    if l > MAX_T_COUNT {
        return Err(Error::InvalidParameter(format!(
            "T count must be at most {MAX_T_COUNT}, got {l}"
        )));
    }
    let index = layered_products(l, &[unitary(t_gate())])?;
    Codebook::from_index(Kind::CliffordT, 1, Some(l), index, l == 0)
}

/// Step gates for the fourth-level product codebook.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FourthLevelSteps {
    /// `√T` or `T` at each step, i.e. every non-Clifford diagonal of the
    /// fourth level up to Clifford factors. Reproduces the closed form.
    #[default]
    SqrtTAndT,
    /// `√T` only.
    SqrtTOnly,
}

/// Largest `l` accepted for Clifford+√T.
pub const MAX_SQRT_T_COUNT: u32 = 5;

/// Single-qubit codebook of products with at most `l` fourth-level gates.
pub fn clifford_s_codebook(l: u32) -> Result<Codebook> {
    clifford_s_codebook_with(l, FourthLevelSteps::default())
}

pub fn clifford_s_codebook_with(l: u32, steps: FourthLevelSteps) -> Result<Codebook> {
    if l > MAX_SQRT_T_COUNT {
        return Err(Error::InvalidParameter(format!(
            "fourth-level gate count must be at most {MAX_SQRT_T_COUNT}, got {l}"
        )));
    }
    let gates = match steps {
        FourthLevelSteps::SqrtTAndT => vec![unitary(sqrt_t_gate()), unitary(t_gate())],
        FourthLevelSteps::SqrtTOnly => vec![unitary(sqrt_t_gate())],
    };
    let index = layered_products(l, &gates)?;
    let kind = match steps {
        FourthLevelSteps::SqrtTAndT => Kind::CliffordS,
        FourthLevelSteps::SqrtTOnly => Kind::Custom,
    };
    let cb = Codebook::from_index(kind, 1, Some(l), index, l == 0)?;
    if kind == Kind::CliffordS {
        let report = cb.cardinality_report();
        if !report.matches() {
            log::warn!(
                "Clifford+sqrt(T) l={l}: observed {} classes, closed form {:?}",
                report.observed,
                report.expected
            );
        }
    }
    Ok(cb)
}
