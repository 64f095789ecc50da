//! The type-A root lattice quiver, the map η onto ℤ/m, its kernel B, the cuts C_k^(l),
//! invariance checks, and the transport of a cut grading to Q_A, Q̃_G and Q_G.
//!
//! Directions are 0..N with α_0 = −(α_1 + ⋯ + α_{N−1}); direction d ≥ 1 lies over the
//! Q_A arrow kind d−1 and direction 0 over kind N−1. Nothing infinite is materialised:
//! every check runs over the transversal {x·α_1 : 0 ≤ x < m} of L/B.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_ordered, Execution};
use crate::groups::{Case, MetacyclicParams};
use crate::mckay::{
    phi_action, phi_morphism, psi_morphism, ArrowKind, McKayData, McKayError, TildeQuiver, VertexKind,
};
use crate::quiver::{pullback_grading, pushforward_grading, quotient_by_action, Grading, QuiverError};

pub type LatticePoint = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub start: LatticePoint,
    pub directions: Vec<usize>,
    pub cut_arrows: usize,
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unit cycle at {:?} along {:?} meets the cut {} times",
            self.start, self.directions, self.cut_arrows
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice directions do not lie over Q_A: {0}")]
    Incompatible(String),
    #[error("need 1 ≤ k ≤ l, got l={l}, k={k}")]
    Range { l: u64, k: u64 },
    #[error("point {0:?} has the wrong number of coordinates")]
    BadPoint(LatticePoint),
    #[error("direction {0} out of range")]
    BadDirection(usize),
    #[error("cut is not B-invariant: arrow ({vertex:?}, {direction}) vs translate by {translate:?}")]
    NotBInvariant {
        vertex: LatticePoint,
        direction: usize,
        translate: LatticePoint,
    },
    #[error("cut is not G/A-invariant at arrow ({vertex:?}, {direction})")]
    NotGAInvariant { vertex: LatticePoint, direction: usize },
    #[error("not a cut: {0}")]
    NotACut(CycleWitness),
    #[error("swap at {0} is not applicable: {1}")]
    SwapPrecondition(String, String),
    #[error("{0} arrow orbits is too many for exhaustive search")]
    TooManyOrbits(usize),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    McKay(#[from] McKayError),
}

/// L = ℤ^{N−1} in the simple-root basis, with η(α_d) = −(weight of Q_A arrow kind over d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    params: MetacyclicParams,
    embedded: bool,
    /// Weight r_d of direction d, so that η(α_d) = −r_d.
    weights: Vec<u64>,
}

impl Lattice {
    /// N = s directions, or s + 1 with the extra weight −c when embedded.
    pub fn new(params: &MetacyclicParams, embedded: bool) -> Result<Self, LatticeError> {
        let m = params.m();
        let s = params.s();
        let kinds: Vec<u64> = (0..s)
            .map(|k| params.r_pow(k))
            .chain(embedded.then(|| (m - params.c()) % m))
            .collect();
        let n = kinds.len();
        let weights: Vec<u64> = (0..n).map(|d| kinds[(d + n - 1) % n]).collect();
        // α_0 = −Σ α_d forces Σ r_d ≡ 0
        if weights.iter().sum::<u64>() % m != 0 {
            return Err(LatticeError::Incompatible(format!(
                "Σ r_d = {} is nonzero mod {m}",
                weights.iter().sum::<u64>() % m
            )));
        }
        Ok(Lattice {
            params: params.clone(),
            embedded,
            weights,
        })
    }

    pub fn params(&self) -> &MetacyclicParams {
        &self.params
    }

    pub fn embedded(&self) -> bool {
        self.embedded
    }

    /// N, the number of directions.
    pub fn directions(&self) -> usize {
        self.weights.len()
    }

    /// Length of a coordinate vector, N − 1.
    pub fn rank(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, d: usize) -> u64 {
        self.weights[d]
    }

    /// The Q_A arrow kind lying over direction d.
    pub fn arrow_kind(&self, d: usize) -> u64 {
        ((d + self.directions() - 1) % self.directions()) as u64
    }

    /// The direction lying over Q_A arrow kind k.
    pub fn direction_of_kind(&self, k: u64) -> usize {
        (k as usize + 1) % self.directions()
    }

    pub fn origin(&self) -> LatticePoint {
        vec![0; self.rank()]
    }

    /// α_d in coordinates.
    pub fn unit(&self, d: usize) -> LatticePoint {
        let mut v = self.origin();
        if d == 0 {
            v.iter_mut().for_each(|x| *x = -1);
        } else {
            v[d - 1] = 1;
        }
        v
    }

    fn check_point(&self, v: &[i64]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::BadPoint(v.to_vec()));
        }
        Ok(())
    }

    pub fn step(&self, v: &[i64], d: usize) -> LatticePoint {
        add(v, &self.unit(d))
    }

    /// η(v) = −Σ v_d r_d mod m.
    pub fn eta(&self, v: &[i64]) -> u64 {
        let m = self.params.m() as i64;
        let sum: i64 = v
            .iter()
            .enumerate()
            .map(|(j, &x)| x.rem_euclid(m) * self.weights[j + 1] as i64 % m)
            .sum();
        (-sum).rem_euclid(m) as u64
    }

    pub fn in_b(&self, v: &[i64]) -> bool {
        self.eta(v) == 0
    }

    /// m·α_1 and α_j − r_j·α_1; the basis matrix is triangular with determinant m.
    pub fn b_basis(&self) -> Vec<LatticePoint> {
        let m = self.params.m() as i64;
        let mut out = Vec::with_capacity(self.rank());
        let mut first = self.origin();
        first[0] = m;
        out.push(first);
        for j in 2..=self.rank() {
            let mut v = self.origin();
            v[j - 1] = 1;
            v[0] = -(self.weights[j] as i64);
            out.push(v);
        }
        out
    }

    /// Index [L : B] read off the basis; equals m.
    pub fn b_index(&self) -> u64 {
        // triangular: diagonal m, 1, …, 1
        self.b_basis().iter().enumerate().map(|(j, v)| v[j].unsigned_abs()).product()
    }

    pub fn transversal(&self) -> Vec<LatticePoint> {
        (0..self.params.m() as i64)
            .map(|x| {
                let mut v = self.origin();
                v[0] = x;
                v
            })
            .collect()
    }

    /// x with v ≡ x·α_1 mod B.
    pub fn reduce(&self, v: &[i64]) -> u64 {
        let m = self.params.m();
        (m - self.eta(v)) % m
    }

    /// The lattice point x·α_1 lying over vertex i of Q_A.
    pub fn lift_vertex(&self, i: u64) -> LatticePoint {
        let m = self.params.m();
        let mut v = self.origin();
        v[0] = ((m - i % m) % m) as i64;
        v
    }

    /// φ on directions: a cyclic shift of all N directions, or of α_1 … α_s with α_0 fixed when embedded.
    pub fn phi_direction(&self, d: usize) -> usize {
        let n = self.directions();
        if self.embedded {
            if d == 0 {
                0
            } else {
                d % (n - 1) + 1
            }
        } else {
            (d + 1) % n
        }
    }

    pub fn phi_point(&self, v: &[i64]) -> LatticePoint {
        let mut out = self.origin();
        for (j, &x) in v.iter().enumerate() {
            let img = self.unit(self.phi_direction(j + 1));
            for (o, u) in out.iter_mut().zip(img) {
                *o += x * u;
            }
        }
        out
    }

    /// C_k^(l): all range errors are hard; k = l in the GL case is left to `verify_cut` to reject.
    pub fn canonical_cut(&self, l: u64, k: u64) -> Result<Cut, LatticeError> {
        if l == 0 || k == 0 || k > l {
            return Err(LatticeError::Range { l, k });
        }
        Ok(Cut::Canonical { l, k })
    }

    /// Warning for parameters outside the range where C_k^(l) is known to be a cut.
    pub fn case_warning(&self, cut: &Cut) -> Option<String> {
        match *cut {
            Cut::Canonical { l, k } if k == l && self.params.case() == Case::GL => {
                Some(format!("C_{k}^({l}) with k = l in the GL case is not expected to be a cut"))
            }
            _ => None,
        }
    }

    pub fn cut_from_spec(&self, spec: &CutSpec) -> Result<Cut, LatticeError> {
        match spec {
            CutSpec::Canonical { l, k } => self.canonical_cut(*l, *k),
            CutSpec::Explicit { arrows } => {
                let mut set = BTreeSet::new();
                for a in arrows {
                    self.check_point(&a.vertex)?;
                    if a.direction >= self.directions() {
                        return Err(LatticeError::BadDirection(a.direction));
                    }
                    set.insert((self.reduce(&a.vertex), a.direction));
                }
                Ok(Cut::Explicit(set))
            }
        }
    }

    pub fn cut_to_spec(&self, cut: &Cut) -> CutSpec {
        match cut {
            Cut::Canonical { l, k } => CutSpec::Canonical { l: *l, k: *k },
            Cut::Explicit(set) => CutSpec::Explicit {
                arrows: set
                    .iter()
                    .map(|&(x, d)| ExplicitArrow {
                        vertex: self.lift_vertex((self.params.m() - x) % self.params.m()),
                        direction: d,
                    })
                    .collect(),
            },
        }
    }

    /// Arrow v → v + α_d lies in the cut.
    pub fn contains(&self, cut: &Cut, v: &[i64], d: usize) -> bool {
        match *cut {
            Cut::Canonical { l, k } => {
                let sl = (self.params.s() * l) as i64;
                let gamma = |p: &[i64]| (k as i64 * p.iter().sum::<i64>()).rem_euclid(sl);
                gamma(v) >= gamma(&self.step(v, d))
            }
            Cut::Explicit(ref set) => set.contains(&(self.reduce(v), d)),
        }
    }

    /// Compares every transversal arrow with its translates by ±(B basis).
    pub fn check_b_invariant(&self, cut: &Cut) -> Result<(), LatticeError> {
        let basis = self.b_basis();
        for v in self.transversal() {
            for d in 0..self.directions() {
                let here = self.contains(cut, &v, d);
                for b in &basis {
                    for sign in [1, -1] {
                        let shifted: LatticePoint = v.iter().zip(b).map(|(x, y)| x + sign * y).collect();
                        if self.contains(cut, &shifted, d) != here {
                            return Err(LatticeError::NotBInvariant {
                                vertex: v.clone(),
                                direction: d,
                                translate: b.iter().map(|y| sign * y).collect(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_b_invariant(&self, cut: &Cut) -> bool {
        self.check_b_invariant(cut).is_ok()
    }

    pub fn check_ga_invariant(&self, cut: &Cut) -> Result<(), LatticeError> {
        for v in self.transversal() {
            let pv = self.phi_point(&v);
            for d in 0..self.directions() {
                if self.contains(cut, &v, d) != self.contains(cut, &pv, self.phi_direction(d)) {
                    return Err(LatticeError::NotGAInvariant {
                        vertex: v,
                        direction: d,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_ga_invariant(&self, cut: &Cut) -> bool {
        self.check_ga_invariant(cut).is_ok()
    }

    /// Every unit cycle at every transversal vertex meets the cut exactly once; B-invariance is checked first.
    pub fn verify_cut(&self, cut: &Cut) -> Result<(), LatticeError> {
        self.verify_cut_with(cut, Execution::default())
    }

    pub fn verify_cut_with(&self, cut: &Cut, exec: Execution) -> Result<(), LatticeError> {
        self.check_b_invariant(cut)?;
        let n = self.directions();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let found = map_ordered(exec, &self.transversal(), |v| {
            for perm in &perms {
                let mut at = v.clone();
                let mut hits = 0;
                for &d in perm {
                    hits += usize::from(self.contains(cut, &at, d));
                    at = self.step(&at, d);
                }
                if hits != 1 {
                    return Some(CycleWitness {
                        start: v.clone(),
                        directions: perm.clone(),
                        cut_arrows: hits,
                    });
                }
            }
            None
        });
        match found.into_iter().flatten().next() {
            Some(w) => Err(LatticeError::NotACut(w)),
            None => Ok(()),
        }
    }

    /// Degree 1 on the Q_A arrows lying under cut arrows; requires B-invariance.
    pub fn grading_on_qa(&self, cut: &Cut, qa: &McKayData) -> Result<Grading, LatticeError> {
        self.check_b_invariant(cut)?;
        let degrees = qa
            .arrows
            .iter()
            .map(|kind| match *kind {
                ArrowKind::Abelian { i, k } => {
                    i64::from(self.contains(cut, &self.lift_vertex(i), self.direction_of_kind(k)))
                }
                _ => unreachable!("Q_A carries abelian arrows only"),
            })
            .collect();
        Ok(Grading::new(degrees))
    }

    /// g_G = Ψ^* Φ_* g_A, after checking the cut is B- and G/A-invariant.
    pub fn induce_grading(
        &self,
        cut: &Cut,
        qa: &McKayData,
        tilde: &TildeQuiver,
        qg: &McKayData,
    ) -> Result<InducedGrading, LatticeError> {
        self.verify_cut(cut)?;
        self.check_ga_invariant(cut)?;
        let on_a = self.grading_on_qa(cut, qa)?;
        let phi = phi_morphism(qa, tilde)?;
        let on_tilde = pushforward_grading(&phi, &on_a, tilde.quiver.num_arrows())?;
        let psi = psi_morphism(qg, tilde)?;
        let on_g = pullback_grading(&psi, &on_tilde);
        Ok(InducedGrading { on_a, on_tilde, on_g })
    }

    /// sl for canonical cuts: every longer path crosses the cut.
    pub fn path_bound(&self, cut: &Cut) -> Option<usize> {
        match cut {
            Cut::Canonical { l, .. } => Some((self.params.s() * l) as usize),
            Cut::Explicit(_) => None,
        }
    }
}

fn add(a: &[i64], b: &[i64]) -> LatticePoint {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A B-invariant arrow set of the lattice quiver; explicit cuts are stored over the transversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cut {
    Canonical { l: u64, k: u64 },
    /// (x, d): the arrow x·α_1 → x·α_1 + α_d.
    Explicit(BTreeSet<(u64, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitArrow {
    pub vertex: LatticePoint,
    pub direction: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CutSpec {
    Canonical { l: u64, k: u64 },
    Explicit { arrows: Vec<ExplicitArrow> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGrading {
    pub on_a: Grading,
    pub on_tilde: Grading,
    pub on_g: Grading,
}

/// Gauge move at the split vertex j^(ℓ): in-arrows and out-arrows exchange their degrees.
///
/// Requires all in-arrows of one degree d and all out-arrows of degree 1 − d; loops are untouched.
/// Every cycle through the vertex keeps its degree.
pub fn swap_move(data: &McKayData, g: &Grading, j: u64, l: u64) -> Result<Grading, LatticeError> {
    let name = format!("{j}^({l})");
    let v = data
        .find_vertex(VertexKind::Split { i: j, l })
        .ok_or_else(|| LatticeError::SwapPrecondition(name.clone(), "not a split vertex".into()))?;
    let q = &data.quiver;
    let ins: Vec<usize> = q.in_arrows(v).iter().copied().filter(|&a| q.arrow(a).src != v).collect();
    let outs: Vec<usize> = q.out_arrows(v).iter().copied().filter(|&a| q.arrow(a).tgt != v).collect();
    let uniform = |arrows: &[usize], d: i64| arrows.iter().all(|&a| g.degree(a) == d);
    let delta = if uniform(&ins, 1) && uniform(&outs, 0) {
        -1
    } else if uniform(&ins, 0) && uniform(&outs, 1) {
        1
    } else {
        return Err(LatticeError::SwapPrecondition(
            name,
            "in- and out-arrows do not carry complementary constant degrees".into(),
        ));
    };
    let mut out = g.clone();
    for &a in &ins {
        out.set(a, g.degree(a) + delta);
    }
    for &a in &outs {
        out.set(a, g.degree(a) - delta);
    }
    Ok(out)
}

/// Longest path using only degree-0 arrows, or `None` if they contain an oriented cycle.
pub fn longest_degree_zero_path(q: &crate::quiver::Quiver, g: &Grading) -> Option<usize> {
    let (sub, _) = q.subquiver(|a| g.degree(a) == 0);
    if sub.has_oriented_cycle() {
        return None;
    }
    // memoised longest path from each vertex in a DAG
    fn longest(q: &crate::quiver::Quiver, v: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(x) = memo[v] {
            return x;
        }
        let best = q
            .out_arrows(v)
            .iter()
            .map(|&a| 1 + longest(q, q.arrow(a).tgt, memo))
            .max()
            .unwrap_or(0);
        memo[v] = Some(best);
        best
    }
    let mut memo = vec![None; sub.num_vertices()];
    (0..sub.num_vertices()).map(|v| longest(&sub, v, &mut memo)).max()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroPathBound {
    pub bound: usize,
    /// Every path of length `bound` has positive degree.
    pub holds: bool,
}

pub fn zero_path_bound(
    lattice: &Lattice,
    cut: &Cut,
    q: &crate::quiver::Quiver,
    g: &Grading,
) -> Option<ZeroPathBound> {
    let bound = lattice.path_bound(cut)?;
    let holds = longest_degree_zero_path(q, g).is_some_and(|len| len < bound);
    Some(ZeroPathBound { bound, holds })
}

/// Exhaustive search for G/A-invariant cuts of Q_A: unions of φ-orbits of arrows meeting every unit cycle once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutSearch {
    pub orbits: Vec<Vec<usize>>,
    pub subsets_checked: u64,
    /// Orbit masks of every invariant cut.
    pub cuts: Vec<u64>,
    /// Unit cycles (as vertex sequences) lying in a single orbit; these meet an invariant set 0 or ≥ 2 times.
    pub obstructions: Vec<Vec<usize>>,
}

/// Unit cycles of Q_A: one arrow of each kind, in every order, from every vertex.
pub fn unit_cycles(qa: &McKayData) -> Vec<Vec<usize>> {
    let index: HashMap<(u64, u64), usize> = qa
        .arrows
        .iter()
        .enumerate()
        .map(|(id, kind)| match *kind {
            ArrowKind::Abelian { i, k } => ((i, k), id),
            _ => unreachable!("Q_A carries abelian arrows only"),
        })
        .collect();
    let kinds = qa.degree() as u64;
    let q = &qa.quiver;
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        for perm in (0..kinds).permutations(kinds as usize) {
            let mut at = v;
            let mut cycle = Vec::with_capacity(perm.len());
            for k in perm {
                let a = index[&(at as u64, k)];
                cycle.push(a);
                at = q.arrow(a).tgt;
            }
            if at == v {
                out.push(cycle);
            }
        }
    }
    out
}

pub fn invariant_cut_search(qa: &McKayData) -> Result<CutSearch, LatticeError> {
    let action = phi_action(qa)?;
    let orbit = quotient_by_action(&qa.quiver, &action);
    let norbits = orbit.arrow_orbits.len();
    if norbits > 24 {
        return Err(LatticeError::TooManyOrbits(norbits));
    }
    let of = &orbit.projection.arrow_map;
    let cycles = unit_cycles(qa);
    let counts: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|&a| of[a]).collect()).collect();
    let mut cuts = Vec::new();
    for mask in 0u64..1 << norbits {
        if counts
            .iter()
            .all(|c| c.iter().filter(|&&o| mask >> o & 1 == 1).count() == 1)
        {
            cuts.push(mask);
        }
    }
    let mut obstructions: Vec<Vec<usize>> = Vec::new();
    let mut seen = BTreeSet::new();
    for (c, os) in cycles.iter().zip(&counts) {
        if os.iter().all(|&o| o == os[0]) && seen.insert(c.iter().copied().collect::<BTreeSet<_>>()) {
            obstructions.push(c.iter().map(|&a| qa.quiver.arrow(a).src).collect());
        }
    }
    Ok(CutSearch {
        orbits: orbit.arrow_orbits,
        subsets_checked: 1 << norbits,
        cuts,
        obstructions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{choose_representatives, RepSystem};
    use crate::mckay::{mckay_abelian, mckay_metacyclic, tilde_quiver};

    fn m21() -> RepSystem {
        let p = MetacyclicParams::new(21, 4, 3, 0).unwrap();
        RepSystem::with_representatives(&p, &[0, 4, 7, 8, 9, 12, 13, 14, 17]).unwrap()
    }

    #[test]
    fn eta_and_b() {
        let lat = Lattice::new(m21().params(), false).unwrap();
        assert_eq!(lat.eta(&lat.origin()), 0);
        assert_eq!(lat.eta(&[1, 0]), 20);
        assert_eq!(lat.eta(&[0, 1]), 17);
        assert!(lat.in_b(&[1, 5]));
        assert!(lat.in_b(&[21, 0]));
        assert!(lat.b_basis().iter().all(|b| lat.in_b(b)));
        assert_eq!(lat.b_index(), 21);
        let classes: BTreeSet<u64> = lat.transversal().iter().map(|v| lat.eta(v)).collect();
        assert_eq!(classes.len(), 21);
        // η(α_0) = r_1 + r_2 = 1 + 4
        assert_eq!(lat.eta(&lat.unit(0)), 5);
    }

    #[test]
    fn gl_needs_the_embedding() {
        let p = MetacyclicParams::new(12, 5, 2, 6).unwrap();
        assert!(Lattice::new(&p, false).is_err());
        let lat = Lattice::new(&p, true).unwrap();
        assert_eq!(lat.directions(), 3);
        assert_eq!(lat.phi_direction(0), 0);
        assert_eq!(lat.phi_direction(2), 1);
    }

    #[test]
    fn phi_is_compatible_with_eta() {
        for (p, emb) in [(m21().params().clone(), false), (MetacyclicParams::new(12, 5, 2, 6).unwrap(), true)] {
            let lat = Lattice::new(&p, emb).unwrap();
            for d in 0..lat.directions() {
                let u = lat.unit(d);
                assert_eq!(lat.phi_point(&u), lat.unit(lat.phi_direction(d)));
                assert_eq!(lat.eta(&lat.phi_point(&u)), lat.eta(&u) * p.r() % p.m());
            }
        }
    }

    #[test]
    fn canonical_cut_m21() {
        let lat = Lattice::new(m21().params(), false).unwrap();
        let cut = lat.canonical_cut(1, 1).unwrap();
        lat.verify_cut(&cut).unwrap();
        assert!(lat.is_ga_invariant(&cut));
        assert!(lat.canonical_cut(1, 2).is_err());
        assert!(lat.case_warning(&cut).is_none());
    }

    #[test]
    fn trivial_sets_are_not_cuts() {
        let lat = Lattice::new(m21().params(), false).unwrap();
        let empty = Cut::Explicit(BTreeSet::new());
        match lat.verify_cut(&empty) {
            Err(LatticeError::NotACut(w)) => assert_eq!(w.cut_arrows, 0),
            other => panic!("{other:?}"),
        }
        let all = Cut::Explicit((0..21).flat_map(|x| (0..3).map(move |d| (x, d))).collect());
        match lat.verify_cut(&all) {
            Err(LatticeError::NotACut(w)) => assert_eq!(w.cut_arrows, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gl_boundary_k_equal_l_fails() {
        let p = MetacyclicParams::new(12, 5, 2, 6).unwrap();
        let lat = Lattice::new(&p, true).unwrap();
        lat.verify_cut(&lat.canonical_cut(2, 1).unwrap()).unwrap();
        let bad = lat.canonical_cut(2, 2).unwrap();
        assert!(lat.case_warning(&bad).is_some());
        match lat.verify_cut(&bad) {
            Err(LatticeError::NotACut(w)) => assert_eq!(w.cut_arrows, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_round_trip() {
        let lat = Lattice::new(m21().params(), false).unwrap();
        let set: BTreeSet<(u64, usize)> = lat
            .transversal()
            .iter()
            .flat_map(|v| (0..3).map(move |d| (v.clone(), d)))
            .filter(|(v, d)| lat.contains(&Cut::Canonical { l: 1, k: 1 }, v, *d))
            .map(|(v, d)| (lat.reduce(&v), d))
            .collect();
        let explicit = Cut::Explicit(set);
        let spec = lat.cut_to_spec(&explicit);
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.starts_with(r#"{"kind":"explicit""#));
        let back = lat.cut_from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, explicit);
        lat.verify_cut(&back).unwrap();
        let canon: CutSpec = serde_json::from_str(r#"{"kind":"canonical","l":1,"k":1}"#).unwrap();
        assert_eq!(lat.cut_from_spec(&canon).unwrap(), Cut::Canonical { l: 1, k: 1 });
    }

    #[test]
    fn induced_grading_m21_degree_one_arrows() {
        let reps = m21();
        let qa = mckay_abelian(reps.params(), false).unwrap();
        let qg = mckay_metacyclic(&reps, false).unwrap();
        let tilde = tilde_quiver(&reps, false).unwrap();
        let lat = Lattice::new(reps.params(), false).unwrap();
        let cut = lat.canonical_cut(1, 1).unwrap();
        let g = lat.induce_grading(&cut, &qa, &tilde, &qg).unwrap();
        let mut labels: Vec<&str> = g
            .on_g
            .arrows_of_degree(1)
            .into_iter()
            .map(|a| qg.quiver.arrow(a).label.as_str())
            .collect();
        labels.sort_unstable();
        // the golden fixture lists the same eleven arrows
        assert_eq!(labels.len(), 11);
        assert!(labels.contains(&"x^{13}_{2,2}") && labels.contains(&"x^{(1)7}_{2,0}"));
        let zb = zero_path_bound(&lat, &cut, &qg.quiver, &g.on_g).unwrap();
        assert_eq!(zb, ZeroPathBound { bound: 3, holds: true });
        assert!(zero_path_bound(&lat, &cut, &qg.quiver, &Grading::constant(33, 0)).is_some_and(|z| !z.holds));
    }

    #[test]
    fn swap_is_an_involution_on_s2() {
        let p = MetacyclicParams::family_m(2, 1).unwrap();
        let reps = choose_representatives(&p).unwrap();
        let qa = mckay_abelian(&p, false).unwrap();
        let qg = mckay_metacyclic(&reps, false).unwrap();
        let tilde = tilde_quiver(&reps, false).unwrap();
        let lat = Lattice::new(&p, false).unwrap();
        let g = lat.induce_grading(&lat.canonical_cut(1, 1).unwrap(), &qa, &tilde, &qg).unwrap().on_g;
        let once = swap_move(&qg, &g, 0, 1).unwrap();
        assert_ne!(once, g);
        assert_eq!(swap_move(&qg, &once, 0, 1).unwrap(), g);
        assert!(swap_move(&qg, &g, 1, 0).is_err());
    }

    #[test]
    fn no_invariant_cut_for_7_2_3() {
        let p = MetacyclicParams::new(7, 2, 3, 0).unwrap();
        let qa = mckay_abelian(&p, false).unwrap();
        let search = invariant_cut_search(&qa).unwrap();
        assert_eq!(search.orbits.len(), 7);
        assert!(search.cuts.is_empty());
        let tri: BTreeSet<usize> = [2, 1, 4].into();
        assert!(search.obstructions.iter().any(|c| c.iter().copied().collect::<BTreeSet<_>>() == tri));
    }

    #[test]
    fn m21_has_invariant_cuts() {
        let qa = mckay_abelian(m21().params(), false).unwrap();
        let search = invariant_cut_search(&qa).unwrap();
        assert!(!search.cuts.is_empty());
        assert!(search.obstructions.is_empty());
    }
}
