//! The degree-0 part of a graded derivation quotient algebra: its quiver, relations,
//! finiteness, exact dimension and recognition of extended Dynkin type D.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::exact::{CycNum, RowReducer};
use crate::exec::{map_ordered, Execution};
use crate::lattice::longest_degree_zero_path;
use crate::quiver::{Grading, Path, Quiver};
use crate::superpotential::{element_degree, relations, Relation, Superpotential};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("relation {by} is not homogeneous: {first} and {second} differ in degree")]
    Inhomogeneous { by: String, first: String, second: String },
    #[error("degree-0 part is infinite dimensional")]
    Infinite,
}

/// Path algebra of a graded quiver modulo the derivatives ∂_p ω, |p| = n − 2.
#[derive(Debug, Clone)]
pub struct GradedPresentation {
    pub quiver: Quiver,
    pub grading: Grading,
    pub relations: Vec<Relation>,
    pub order: u64,
    /// Degree of ω.
    pub omega_degree: Option<i64>,
}

impl GradedPresentation {
    /// Fails on the first inhomogeneous relation.
    pub fn new(q: &Quiver, w: &Superpotential, g: &Grading) -> Result<Self, GradingError> {
        let rels = relations(q, w);
        for r in &rels {
            element_degree(g, &r.element).map_err(|(a, b)| GradingError::Inhomogeneous {
                by: r.by.display(q),
                first: a.display(q),
                second: b.display(q),
            })?;
        }
        Ok(GradedPresentation {
            quiver: q.clone(),
            grading: g.clone(),
            relations: rels,
            order: w.order,
            omega_degree: element_degree(g, &w.terms).ok().flatten(),
        })
    }

    /// All vertices, degree-0 arrows only; also returns the original arrow ids.
    pub fn degree_zero_quiver(&self) -> (Quiver, Vec<usize>) {
        self.quiver.subquiver(|a| self.grading.degree(a) == 0)
    }

    pub fn degree_zero_relations(&self) -> Vec<&Relation> {
        self.relations
            .iter()
            .filter(|r| element_degree(&self.grading, &r.element) == Ok(Some(0)))
            .collect()
    }

    /// No degree-0 path of length `bound` exists.
    pub fn is_finite_dimensional(&self, bound: usize) -> bool {
        longest_degree_zero_path(&self.quiver, &self.grading).is_some_and(|len| len < bound)
    }

    pub fn dimension(&self) -> Result<usize, GradingError> {
        self.dimension_with(Execution::default())
    }

    /// Σ over path lengths L of (#degree-0 paths of length L − dim of the ideal in length L).
    ///
    /// Degree-0 relations are homogeneous in path length, so the ideal splits by length and
    /// is spanned in length L by u·ρ·v with |u| + |ρ| + |v| = L.
    pub fn dimension_with(&self, exec: Execution) -> Result<usize, GradingError> {
        let longest = longest_degree_zero_path(&self.quiver, &self.grading).ok_or(GradingError::Infinite)?;
        let (sub, back) = self.degree_zero_quiver();
        let q = &self.quiver;
        let lift = |p: &Path| Path::from_parts(p.source(), p.arrows().iter().map(|&a| back[a]).collect());
        let strata: Vec<Vec<Path>> = (0..=longest)
            .map(|len| {
                if len == 0 {
                    (0..sub.num_vertices()).map(Path::trivial).collect()
                } else {
                    sub.paths_of_length(len).iter().map(lift).collect()
                }
            })
            .collect();
        // paths of length L ending (resp. starting) at each vertex
        let mut ending: Vec<HashMap<usize, Vec<&Path>>> = Vec::new();
        let mut starting: Vec<HashMap<usize, Vec<&Path>>> = Vec::new();
        for stratum in &strata {
            let mut e: HashMap<usize, Vec<&Path>> = HashMap::new();
            let mut s: HashMap<usize, Vec<&Path>> = HashMap::new();
            for p in stratum {
                e.entry(p.target(q)).or_default().push(p);
                s.entry(p.source()).or_default().push(p);
            }
            ending.push(e);
            starting.push(s);
        }
        let rels: Vec<&Relation> = self.degree_zero_relations();
        let mut dim = 0;
        for (len, stratum) in strata.iter().enumerate() {
            let pos: HashMap<&Path, usize> = stratum.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let rows: Vec<Vec<Vec<CycNum>>> = map_ordered(exec, &rels, |rel| {
                let some = rel.element.keys().next().expect("nonempty relation");
                let rl = some.len();
                let (a, b) = (some.source(), some.target(q));
                let mut out = Vec::new();
                if rl > len {
                    return out;
                }
                #[allow(clippy::needless_range_loop)] // ul and vl index two tables
                for ul in 0..=len - rl {
                    let vl = len - rl - ul;
                    let empty = Vec::new();
                    let us = ending[ul].get(&a).unwrap_or(&empty);
                    let vs = starting[vl].get(&b).unwrap_or(&empty);
                    for u in us {
                        for v in vs {
                            let mut row = vec![CycNum::zero(self.order); stratum.len()];
                            for (word, c) in &rel.element {
                                let full = u.then(q, word).and_then(|x| x.then(q, v)).expect("composable");
                                let i = pos[&full];
                                row[i] = &row[i] + c;
                            }
                            out.push(row);
                        }
                    }
                }
                out
            });
            let mut red = RowReducer::new(self.order, stratum.len());
            for row in rows.into_iter().flatten() {
                red.insert(row);
            }
            dim += stratum.len() - red.rank();
        }
        Ok(dim)
    }

    pub fn report(&self, bound: usize) -> DegreeZeroReport {
        let (sub, _) = self.degree_zero_quiver();
        let finite = self.is_finite_dimensional(bound);
        DegreeZeroReport {
            finite,
            dimension: if finite { self.dimension().ok() } else { None },
            degree0_vertices: sub.num_vertices(),
            degree0_arrows: sub.num_arrows(),
            degree0_relations: self.degree_zero_relations().len(),
            dynkin: recognize_extended_dynkin_d(&sub).map(|k| format!("D~{k}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeZeroReport {
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub degree0_vertices: usize,
    pub degree0_arrows: usize,
    pub degree0_relations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynkin: Option<String>,
}

/// k if the underlying graph is D̃_k (k ≥ 4): a tree on k + 1 vertices with two branch points
/// each carrying two leaves, or the star with four leaves when k = 4.
pub fn recognize_extended_dynkin_d(q: &Quiver) -> Option<usize> {
    let n = q.num_vertices();
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in q.arrows() {
        if a.src == a.tgt {
            return None;
        }
        *edges.entry((a.src.min(a.tgt), a.src.max(a.tgt))).or_default() += 1;
    }
    if n < 5 || edges.values().any(|&c| c > 1) || edges.len() != n - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges.keys() {
        adj[u].push(v);
        adj[v].push(u);
    }
    // n − 1 edges and connected ⇒ tree
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.contains(&false) {
        return None;
    }
    let deg = |v: usize| adj[v].len();
    let leaves = (0..n).filter(|&v| deg(v) == 1).count();
    let ok = if n == 5 {
        (0..n).any(|v| deg(v) == 4) && leaves == 4
    } else {
        let branch: Vec<usize> = (0..n).filter(|&v| deg(v) >= 3).collect();
        branch.len() == 2
            && branch.iter().all(|&b| deg(b) == 3 && adj[b].iter().filter(|&&w| deg(w) == 1).count() == 2)
            && leaves == 4
    };
    ok.then_some(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{choose_representatives, MetacyclicParams, RepSystem};
    use crate::lattice::Lattice;
    use crate::mckay::{mckay_abelian, mckay_metacyclic, tilde_quiver};
    use crate::superpotential::superpotential;

    fn pipeline(reps: &RepSystem, emb: bool, l: u64, k: u64) -> (GradedPresentation, usize) {
        let p = reps.params();
        let qa = mckay_abelian(p, emb).unwrap();
        let qg = mckay_metacyclic(reps, emb).unwrap();
        let tilde = tilde_quiver(reps, emb).unwrap();
        let lat = Lattice::new(p, emb).unwrap();
        let cut = lat.canonical_cut(l, k).unwrap();
        let g = lat.induce_grading(&cut, &qa, &tilde, &qg).unwrap().on_g;
        let w = superpotential(&qg).unwrap();
        (GradedPresentation::new(&qg.quiver, &w, &g).unwrap(), lat.path_bound(&cut).unwrap())
    }

    fn m21() -> RepSystem {
        let p = MetacyclicParams::new(21, 4, 3, 0).unwrap();
        RepSystem::with_representatives(&p, &[0, 4, 7, 8, 9, 12, 13, 14, 17]).unwrap()
    }

    #[test]
    fn m21_matches_golden() {
        let (pres, bound) = pipeline(&m21(), false, 1, 1);
        assert_eq!(pres.omega_degree, Some(1));
        assert!(pres.is_finite_dimensional(bound));
        assert_eq!(pres.degree_zero_relations().len(), 11);
        assert_eq!(pres.dimension().unwrap(), 59);
        assert_eq!(pres.dimension_with(Execution::Sequential).unwrap(), 59);
    }

    #[test]
    fn s2_is_hereditary_type_d() {
        for b in 1..=3 {
            let p = MetacyclicParams::family_m(2, b).unwrap();
            let (pres, bound) = pipeline(&choose_representatives(&p).unwrap(), false, 1, 1);
            assert!(pres.degree_zero_relations().is_empty());
            let (sub, _) = pres.degree_zero_quiver();
            assert!(!sub.has_oriented_cycle());
            assert_eq!(recognize_extended_dynkin_d(&sub), Some(p.m() as usize / 2 + 2));
            assert!(pres.is_finite_dimensional(bound));
        }
    }

    #[test]
    fn arrowless_dimension_counts_vertices() {
        let (pres, _) = pipeline(&m21(), false, 1, 1);
        let all_one = GradedPresentation {
            grading: Grading::constant(pres.quiver.num_arrows(), 1),
            ..pres.clone()
        };
        assert_eq!(all_one.dimension().unwrap(), 15);
        let all_zero = GradedPresentation {
            grading: Grading::constant(pres.quiver.num_arrows(), 0),
            ..pres
        };
        assert!(!all_zero.is_finite_dimensional(3));
        assert_eq!(all_zero.dimension(), Err(GradingError::Infinite));
    }

    #[test]
    fn dynkin_templates() {
        let star = {
            let mut q = Quiver::new((0..5).map(|v| v.to_string()).collect());
            for v in 1..5 {
                q.add_arrow(v, 0, format!("a{v}")).unwrap();
            }
            q
        };
        assert_eq!(recognize_extended_dynkin_d(&star), Some(4));
        let mut d5 = Quiver::new((0..6).map(|v| v.to_string()).collect());
        for (k, (u, v)) in [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)].into_iter().enumerate() {
            d5.add_arrow(u, v, format!("a{k}")).unwrap();
        }
        assert_eq!(recognize_extended_dynkin_d(&d5), Some(5));
        let mut e6ish = Quiver::new((0..6).map(|v| v.to_string()).collect());
        for (k, (u, v)) in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)].into_iter().enumerate() {
            e6ish.add_arrow(u, v, format!("a{k}")).unwrap();
        }
        assert_eq!(recognize_extended_dynkin_d(&e6ish), None);
        let mut tri = Quiver::new((0..3).map(|v| v.to_string()).collect());
        for (k, (u, v)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
            tri.add_arrow(u, v, format!("a{k}")).unwrap();
        }
        assert_eq!(recognize_extended_dynkin_d(&tri), None);
    }
}
