//! Twisted superpotentials of McKay quivers by composing arrow maps and antisymmetrising,
//! with derivatives, relations, cyclicity, the residue criterion, support comparisons,
//! the duality pairing and homogeneity.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::exact::{CycMatrix, CycNum, RootSum, RowReducer};
use crate::exec::{map_ordered, Execution};
use crate::mckay::{dense, ArrowKind, McKayData, VertexKind};
use crate::quiver::{Grading, Path, Quiver, QuiverMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperpotentialError {
    #[error("path has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("arrows {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("composite along {0} is not a scalar")]
    NonScalar(String),
    #[error("path {0} passes through a split vertex")]
    NotFixedPointFree(String),
}

/// A finite linear combination of paths.
pub type Element = BTreeMap<Path, CycNum>;

/// ω = Σ (c_p · dim t(p)) p over paths with s(p) = τ(t(p)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superpotential {
    pub degree: usize,
    pub order: u64,
    pub terms: Element,
    pub twist: QuiverMorphism,
    pub twist_scalars: Vec<CycNum>,
}

#[derive(Serialize)]
struct TermJson<'a> {
    path: &'a [usize],
    coeff: &'a CycNum,
}

impl Superpotential {
    pub fn support(&self) -> BTreeSet<Path> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, p: &Path) -> CycNum {
        self.terms.get(p).cloned().unwrap_or_else(|| CycNum::zero(self.order))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(p, c)| TermJson {
                path: p.arrows(),
                coeff: c,
            })
            .collect();
        serde_json::json!({ "degree": self.degree, "terms": terms })
    }

    /// The same twist with no terms.
    pub fn zero_like(&self) -> Self {
        Superpotential {
            terms: Element::new(),
            ..self.clone()
        }
    }
}

/// Dense matrix of an arrow map; row index w·dim T + t.
pub fn arrow_matrix(data: &McKayData, arrow: usize) -> CycMatrix {
    let map = &data.maps[arrow];
    let src_dim = map.columns.len();
    let mut out = CycMatrix::zeros(map.order, map.w_dim * map.tgt_dim, src_dim);
    for (k, col) in map.columns.iter().enumerate() {
        for (row, v) in dense(map.order, col, map.w_dim, map.tgt_dim).into_iter().enumerate() {
            if !v.is_zero() {
                out.set(row, k, v);
            }
        }
    }
    out
}

/// Partial composite: (W indices in traversal order, basis index of the current vertex) ↦ coefficient.
type State = Vec<(Vec<u8>, usize, RootSum)>;

fn step(data: &McKayData, state: &State, arrow: usize) -> State {
    let map = &data.maps[arrow];
    let mut acc: HashMap<(Vec<u8>, usize), RootSum> = HashMap::new();
    for (ws, t, c) in state {
        for (w, t2, c2) in &map.columns[*t] {
            let w = *w as u8;
            // a repeated W index dies under the antisymmetriser
            if ws.contains(&w) {
                continue;
            }
            let mut key = ws.clone();
            key.push(w);
            let e = acc.entry((key, *t2)).or_insert_with(|| RootSum::zero(map.order));
            *e = e.add(&c.mul(c2));
        }
    }
    let mut out: State = acc
        .into_iter()
        .filter(|(_, c)| !c.is_empty())
        .map(|((ws, t), c)| (ws, t, c))
        .collect();
    out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    out
}

fn permutation_sign(ws: &[u8]) -> i64 {
    let mut inversions = 0;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if ws[i] > ws[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn initial_state(order: u64) -> State {
    vec![(Vec::new(), 0, RootSum::one(order))]
}

/// Antisymmetrises a full composite at `last` and reads off the scalar on b_0 of τ(last).
fn finish(data: &McKayData, state: &State, last: usize, path: impl Fn() -> String) -> Result<CycNum, SuperpotentialError> {
    let order = data.order();
    let iota = &data.twist.iota[last];
    let mut out = vec![RootSum::zero(order); iota.dim()];
    for (ws, t, c) in state {
        let (row, ph) = iota.image(*t);
        let signed = c.scale(&crate::exact::rat(permutation_sign(ws)));
        out[row] = out[row].add(&signed.mul(&RootSum::root(order, ph as i64)));
    }
    if out.iter().skip(1).any(|x| !x.to_cyc().is_zero()) {
        return Err(SuperpotentialError::NonScalar(path()));
    }
    Ok(out[0].to_cyc())
}

/// c_p for a path of length n; zero unless s(p) = τ(t(p)).
pub fn coefficient(data: &McKayData, p: &Path) -> Result<CycNum, SuperpotentialError> {
    let n = data.degree();
    if p.len() != n {
        return Err(SuperpotentialError::WrongLength {
            expected: n,
            found: p.len(),
        });
    }
    let q = &data.quiver;
    for w in p.arrows().windows(2) {
        if q.arrow(w[0]).tgt != q.arrow(w[1]).src {
            return Err(SuperpotentialError::NotComposable(w[0], w[1]));
        }
    }
    let last = p.target(q);
    if data.twist.vertex_map[last] != p.source() {
        return Ok(CycNum::zero(data.order()));
    }
    let mut state = initial_state(data.order());
    for &a in p.arrows() {
        state = step(data, &state, a);
    }
    finish(data, &state, last, || p.display(q))
}

fn search_from(data: &McKayData, v0: usize) -> Result<Vec<(Path, CycNum)>, SuperpotentialError> {
    let mut out = Vec::new();
    let mut arrows = Vec::with_capacity(data.degree());
    dfs(data, v0, v0, &initial_state(data.order()), &mut arrows, &mut out)?;
    Ok(out)
}

fn dfs(
    data: &McKayData,
    v0: usize,
    at: usize,
    state: &State,
    arrows: &mut Vec<usize>,
    out: &mut Vec<(Path, CycNum)>,
) -> Result<(), SuperpotentialError> {
    let q = &data.quiver;
    if arrows.len() == data.degree() {
        if data.twist.vertex_map[at] == v0 {
            let path = Path::from_parts(v0, arrows.clone());
            let c = finish(data, state, at, || path.display(q))?;
            if !c.is_zero() {
                let dim = crate::exact::rat(data.vertices[at].dim() as i64);
                out.push((path, c.scale(&dim)));
            }
        }
        return Ok(());
    }
    for &a in q.out_arrows(at) {
        let next = step(data, state, a);
        if next.is_empty() {
            continue;
        }
        arrows.push(a);
        dfs(data, v0, q.arrow(a).tgt, &next, arrows, out)?;
        arrows.pop();
    }
    Ok(())
}

/// ω with the default execution strategy.
pub fn superpotential(data: &McKayData) -> Result<Superpotential, SuperpotentialError> {
    superpotential_with(data, Execution::default())
}

/// ω, searching from every start vertex independently; the merge order is fixed.
pub fn superpotential_with(data: &McKayData, exec: Execution) -> Result<Superpotential, SuperpotentialError> {
    let starts: Vec<usize> = (0..data.quiver.num_vertices()).collect();
    let parts = map_ordered(exec, &starts, |&v| search_from(data, v));
    let mut terms = Element::new();
    for part in parts {
        terms.extend(part?);
    }
    Ok(Superpotential {
        degree: data.degree(),
        order: data.order(),
        terms,
        twist: data.twist.morphism(),
        twist_scalars: data.twist.scalars.clone(),
    })
}

/// σ^τ on a path in traversal order: the last arrow, twisted, moves to the front.
pub fn twisted_rotation(q: &Quiver, twist: &QuiverMorphism, p: &Path) -> Path {
    let arrows = p.arrows();
    let Some((&last, rest)) = arrows.split_last() else {
        return p.clone();
    };
    let first = twist.arrow_map[last];
    let mut out = Vec::with_capacity(arrows.len());
    out.push(first);
    out.extend_from_slice(rest);
    Path::from_parts(q.arrow(first).src, out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicityReport {
    /// ω_{σ^τ p} = (−1)^{n−1} μ_a⁻¹ ω_p for every p, with a the rotated arrow.
    pub exact: bool,
    /// p ∈ supp ω ⇔ σ^τ p ∈ supp ω.
    pub support_closed: bool,
    pub witness: Option<Vec<usize>>,
}

/// Checks twisted cyclicity; arrows act through the dual of the twist, hence μ⁻¹.
pub fn check_twisted_cyclicity(q: &Quiver, w: &Superpotential) -> CyclicityReport {
    let sign = if w.degree % 2 == 1 { 1 } else { -1 };
    let mut exact = true;
    let mut support_closed = true;
    let mut witness = None;
    for (p, c) in &w.terms {
        let rp = twisted_rotation(q, &w.twist, p);
        let last = *p.arrows().last().expect("positive degree");
        let mu_inv = w.twist_scalars[last].inv().expect("twist scalars are nonzero");
        let expected = c.scale(&crate::exact::rat(sign)).try_mul(&mu_inv).expect("same order");
        let got = w.coeff(&rp);
        if got.is_zero() {
            support_closed = false;
        }
        if got != expected {
            exact = false;
            witness.get_or_insert_with(|| p.arrows().to_vec());
        }
    }
    CyclicityReport {
        exact,
        support_closed,
        witness,
    }
}

/// The (p,a) data of a path through induced vertices only.
fn induced_data(data: &McKayData, p: &Path) -> Result<Vec<(u64, u64)>, SuperpotentialError> {
    p.arrows()
        .iter()
        .map(|&a| match data.arrows[a] {
            ArrowKind::Induced { p, a, .. } => Ok((p, a)),
            _ => Err(SuperpotentialError::NotFixedPointFree(p.display(&data.quiver))),
        })
        .collect()
}

/// {p_1, a_1+p_2, …, a_1+⋯+a_{s−1}+p_s} covers ℤ/s.
pub fn residue_criterion(data: &McKayData, p: &Path) -> Result<bool, SuperpotentialError> {
    let s = data.params.s();
    let pa = induced_data(data, p)?;
    let mut seen = BTreeSet::new();
    let mut shift = 0;
    for (pk, ak) in pa {
        seen.insert((shift + pk) % s);
        shift += ak;
    }
    Ok(seen.len() as u64 == s)
}

/// The target-vertex congruence r^{Σa} i_{u+1} ≡ i_1 − r^{p_1} − r^{a_1+p_2} − ⋯ (mod m).
pub fn path_congruence_holds(data: &McKayData, p: &Path) -> Result<bool, SuperpotentialError> {
    let params = &data.params;
    let m = params.m();
    let pa = induced_data(data, p)?;
    let vertex_int = |v: usize| match data.vertices[v].kind {
        VertexKind::Induced { i } | VertexKind::Split { i, .. } | VertexKind::Abelian { i } => i,
    };
    let mut rhs = vertex_int(p.source());
    let mut shift = 0;
    for (pk, ak) in &pa {
        rhs = (rhs + m - params.r_pow(shift + pk)) % m;
        shift += ak;
    }
    Ok(params.r_pow(shift) * vertex_int(p.target(&data.quiver)) % m == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub subset: bool,
    pub equal: bool,
    pub psi_image: usize,
    pub phi_image: usize,
    /// Ψ-images with no Φ-preimage in supp ω_A.
    pub missing_from_phi: Vec<Vec<usize>>,
    /// Φ-images with no Ψ-preimage in supp ω_G.
    pub missing_from_psi: Vec<Vec<usize>>,
}

fn image_set(w: &Superpotential, f: &QuiverMorphism) -> BTreeSet<Vec<usize>> {
    w.terms
        .keys()
        .map(|p| p.arrows().iter().map(|&a| f.arrow_map[a]).collect())
        .collect()
}

/// Compares Ψ(supp ω_G) with Φ(supp ω_A) as sets of arrow sequences of Q̃_G.
pub fn support_correspondence(
    omega_a: &Superpotential,
    omega_g: &Superpotential,
    phi: &QuiverMorphism,
    psi: &QuiverMorphism,
) -> SupportReport {
    let from_g = image_set(omega_g, psi);
    let from_a = image_set(omega_a, phi);
    let missing_from_phi: Vec<_> = from_g.difference(&from_a).cloned().collect();
    let missing_from_psi: Vec<_> = from_a.difference(&from_g).cloned().collect();
    SupportReport {
        subset: missing_from_phi.is_empty(),
        equal: missing_from_phi.is_empty() && missing_from_psi.is_empty(),
        psi_image: from_g.len(),
        phi_image: from_a.len(),
        missing_from_phi,
        missing_from_psi,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// ∂_p q = r when q = p·r in product order: p is the traversal suffix.
    Left,
    /// q δ_p = r when q = r·p: p is the traversal prefix.
    Right,
}

/// Linear extension of prefix/suffix stripping; trivial p = e_v keeps terms ending (Left) or starting (Right) at v.
pub fn partial_derivative(q: &Quiver, w: &Element, p: &Path, side: Side) -> Element {
    let mut out = Element::new();
    let k = p.len();
    for (path, c) in w {
        if path.len() < k {
            continue;
        }
        let arrows = path.arrows();
        let (stripped, start) = match side {
            Side::Left => {
                let (rest, tail) = arrows.split_at(arrows.len() - k);
                if k == 0 {
                    if path.target(q) != p.source() {
                        continue;
                    }
                } else if tail != p.arrows() {
                    continue;
                }
                (rest.to_vec(), path.source())
            }
            Side::Right => {
                let (head, rest) = arrows.split_at(k);
                if k == 0 {
                    if path.source() != p.source() {
                        continue;
                    }
                } else if head != p.arrows() {
                    continue;
                }
                let start = if k == 0 { path.source() } else { p.target(q) };
                (rest.to_vec(), start)
            }
        };
        let r = Path::from_parts(start, stripped);
        let e = out.entry(r).or_insert_with(|| CycNum::zero(c.order()));
        *e = &*e + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    /// The path p with this relation equal to ∂_p ω.
    pub by: Path,
    pub element: Element,
}

/// Nonzero ∂_p ω for |p| = n − 2, in path enumeration order.
pub fn relations(q: &Quiver, w: &Superpotential) -> Vec<Relation> {
    let k = w.degree.saturating_sub(2);
    let paths = if k == 0 {
        (0..q.num_vertices()).map(Path::trivial).collect()
    } else {
        q.paths_of_length(k)
    };
    paths
        .into_iter()
        .filter_map(|p| {
            let element = partial_derivative(q, &w.terms, &p, Side::Left);
            (!element.is_empty()).then_some(Relation { by: p, element })
        })
        .collect()
}

/// The common degree of the paths of `element`, or a pair of paths with differing degrees.
pub fn element_degree(g: &Grading, element: &Element) -> Result<Option<i64>, (Path, Path)> {
    let mut first: Option<(&Path, i64)> = None;
    for p in element.keys() {
        let d = g.path_degree(p);
        match first {
            None => first = Some((p, d)),
            Some((q, e)) if e != d => return Err((q.clone(), p.clone())),
            _ => {}
        }
    }
    Ok(first.map(|(_, d)| d))
}

/// The common degree of supp ω, or the first pair of support paths with differing degrees.
pub fn homogeneity_degree(w: &Superpotential, g: &Grading) -> Result<Option<i64>, (Path, Path)> {
    element_degree(g, &w.terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub k: usize,
    /// Paths p (|p| = n−k) whose derivatives form a basis of W_k.
    pub rows: Vec<Path>,
    /// Paths q (|q| = k) whose derivatives form a basis of W_{n−k}.
    pub cols: Vec<Path>,
    pub matrix: CycMatrix,
    pub rank: usize,
    pub nondegenerate: bool,
}

/// Paths of length `len` whose left derivatives of ω are independent, with the span dimension.
fn derivative_basis(q: &Quiver, w: &Superpotential, len: usize) -> Vec<Path> {
    let target_len = w.degree - len;
    let index: Vec<Path> = if target_len == 0 {
        (0..q.num_vertices()).map(Path::trivial).collect()
    } else {
        q.paths_of_length(target_len)
    };
    let pos: HashMap<&Path, usize> = index.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let candidates = if len == 0 {
        (0..q.num_vertices()).map(Path::trivial).collect()
    } else {
        q.paths_of_length(len)
    };
    let mut red = RowReducer::new(w.order, index.len());
    let mut chosen = Vec::new();
    for p in candidates {
        let d = partial_derivative(q, &w.terms, &p, Side::Left);
        if d.is_empty() {
            continue;
        }
        let mut v = vec![CycNum::zero(w.order); index.len()];
        for (r, c) in d {
            v[pos[&r]] = c;
        }
        if red.insert(v) {
            chosen.push(p);
        }
    }
    chosen
}

/// ⟨∂_p ω, ∂_q ω⟩ = Tr(∂_{qp} ω) on bases of W_k × W_{n−k}.
///
/// Nondegenerate means a square matrix of full positive rank; for k ∈ {0, n} the degree-0
/// side must moreover be all of S, i.e. every vertex carries a derivative.
pub fn pairing_matrix(q: &Quiver, w: &Superpotential, k: usize) -> Pairing {
    let n = w.degree;
    let rows = derivative_basis(q, w, n - k);
    let cols = derivative_basis(q, w, k);
    let mut matrix = CycMatrix::zeros(w.order, rows.len(), cols.len());
    for (i, p) in rows.iter().enumerate() {
        for (j, r) in cols.iter().enumerate() {
            // ∂_{qp} strips the traversal suffix "p then q"; only the full path survives the trace
            if p.target(q) != r.source() {
                continue;
            }
            let Ok(full) = p.then(q, r) else { continue };
            let c = w.coeff(&full);
            if !c.is_zero() {
                matrix.set(i, j, c);
            }
        }
    }
    let rank = matrix.rank();
    let square = rows.len() == cols.len();
    let full_s = k != 0 && k != n || rows.len().max(cols.len()) == q.num_vertices();
    Pairing {
        k,
        nondegenerate: square && rank == rows.len() && rank > 0 && full_s,
        rows,
        cols,
        matrix,
        rank,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddedShapeReport {
    /// Every supp ω_{G′} path rotates into a supp ω_G path followed by v → τ(v).
    pub forward: bool,
    /// Every supp ω_G path followed by its v → τ(v) arrow lies in supp ω_{G′}.
    pub backward: bool,
    pub witness: Option<Vec<usize>>,
}

/// Compares supp ω_{G′} with {p · (t(p) → τ t(p)) : p ∈ supp ω_G} up to cyclic rotation.
///
/// Arrow ids of Q_G are a prefix of those of Q_{G′}, and τ′ on Q_{G′} is the identity.
pub fn embedded_shape(embedded: &McKayData, w_emb: &Superpotential, w_base: &Superpotential) -> EmbeddedShapeReport {
    let q = &embedded.quiver;
    let emb_arrow: HashMap<usize, usize> = embedded
        .arrows
        .iter()
        .enumerate()
        .filter_map(|(id, k)| match k {
            ArrowKind::Embedding { from, .. } => Some((*from, id)),
            _ => None,
        })
        .collect();
    let extended: BTreeSet<Vec<usize>> = w_base
        .terms
        .keys()
        .filter_map(|p| {
            let z = emb_arrow.get(&p.target(q))?;
            let mut v = p.arrows().to_vec();
            v.push(*z);
            Some(v)
        })
        .collect();
    let mut witness = None;
    let forward = w_emb.terms.keys().all(|p| {
        let a = p.arrows();
        let ok = (0..a.len()).any(|r| {
            let rot: Vec<usize> = a[r..].iter().chain(&a[..r]).copied().collect();
            extended.contains(&rot)
        });
        if !ok {
            witness.get_or_insert_with(|| a.to_vec());
        }
        ok
    });
    let emb_support: BTreeSet<Vec<usize>> = w_emb.terms.keys().map(|p| p.arrows().to_vec()).collect();
    let backward = extended.iter().all(|v| {
        let ok = emb_support.contains(v);
        if !ok {
            witness.get_or_insert_with(|| v.clone());
        }
        ok
    });
    EmbeddedShapeReport {
        forward,
        backward,
        witness,
    }
}
