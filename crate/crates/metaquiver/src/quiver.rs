//! Finite quivers, paths, integer gradings, morphisms and cyclic group actions.
//!
//! Paths are stored in traversal order (the first arrow walked comes first) and
//! printed in product order, where `ab` means "first b, then a".

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate arrow label {0}")]
    DuplicateLabel(String),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("arrows {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("unknown arrow label {0}")]
    UnknownLabel(String),
    #[error("morphism does not commute with source and target at arrow {0}")]
    NotAMorphism(usize),
    #[error("morphism is not surjective on arrows; arrow {0} has an empty fiber")]
    NotSurjective(usize),
    #[error("fiber over arrow {target} is not homogeneous: arrows {first} and {second}")]
    NotGradable {
        target: usize,
        first: usize,
        second: usize,
    },
    #[error("action generator does not have order {0}")]
    BadActionOrder(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_labels: Vec<String>,
    arrows: Vec<Arrow>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    by_label: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(vertex_labels: Vec<String>) -> Self {
        let n = vertex_labels.len();
        Quiver {
            vertex_labels,
            arrows: Vec::new(),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            by_label: HashMap::new(),
        }
    }

    pub fn add_arrow(&mut self, src: usize, tgt: usize, label: impl Into<String>) -> Result<usize, QuiverError> {
        let label = label.into();
        for v in [src, tgt] {
            if v >= self.num_vertices() {
                return Err(QuiverError::BadVertex(v));
            }
        }
        if self.by_label.contains_key(&label) {
            return Err(QuiverError::DuplicateLabel(label));
        }
        let id = self.arrows.len();
        self.by_label.insert(label.clone(), id);
        self.arrows.push(Arrow { src, tgt, label });
        self.out[src].push(id);
        self.inc[tgt].push(id);
        Ok(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn find_vertex(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn find_arrow(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Number of arrows u → v.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.out[u].iter().filter(|&&a| self.arrows[a].tgt == v).count()
    }

    /// All vertices, only the arrows accepted by `keep`; returns the old id of each new arrow.
    pub fn subquiver(&self, mut keep: impl FnMut(usize) -> bool) -> (Quiver, Vec<usize>) {
        let mut q = Quiver::new(self.vertex_labels.clone());
        let mut back = Vec::new();
        for (id, a) in self.arrows.iter().enumerate() {
            if keep(id) {
                q.add_arrow(a.src, a.tgt, a.label.clone()).expect("labels already unique");
                back.push(id);
            }
        }
        (q, back)
    }

    /// Every path of length `len` starting at `v`, in lexicographic arrow order.
    pub fn paths_from(&self, v: usize, len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(len);
        self.extend_paths(v, v, len, &mut stack, &mut out);
        out
    }

    fn extend_paths(&self, start: usize, at: usize, len: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        if stack.len() == len {
            out.push(Path {
                start,
                arrows: stack.clone(),
            });
            return;
        }
        for &a in &self.out[at] {
            stack.push(a);
            self.extend_paths(start, self.arrows[a].tgt, len, stack, out);
            stack.pop();
        }
    }

    /// Every path of length `len`, grouped by start vertex in vertex order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        (0..self.num_vertices()).flat_map(|v| self.paths_from(v, len)).collect()
    }

    /// Whether the arrow set contains an oriented cycle.
    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle leaves vertices with positive in-degree
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..self.num_vertices()).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &a in &self.out[v] {
                let t = self.arrows[a].tgt;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push(t);
                }
            }
        }
        seen < self.num_vertices()
    }

    pub fn to_json(&self, grading: Option<&Grading>) -> QuiverJson {
        QuiverJson {
            vertices: self
                .vertex_labels
                .iter()
                .enumerate()
                .map(|(id, label)| VertexJson {
                    id,
                    label: label.clone(),
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .enumerate()
                .map(|(id, a)| ArrowJson {
                    id,
                    src: a.src,
                    tgt: a.tgt,
                    label: a.label.clone(),
                    degree: grading.map(|g| g.degree(id)),
                })
                .collect(),
        }
    }

    pub fn to_dot(&self, name: &str, grading: Option<&Grading>) -> String {
        let mut s = format!("digraph {name} {{\n");
        for (v, label) in self.vertex_labels.iter().enumerate() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", escape(label));
        }
        for (id, a) in self.arrows.iter().enumerate() {
            let _ = write!(s, "  v{} -> v{} [label=\"{}\"", a.src, a.tgt, escape(&a.label));
            if let Some(g) = grading {
                let d = g.degree(id);
                let _ = write!(s, ", degree={d}");
                if d > 0 {
                    s.push_str(", penwidth=2.5");
                }
            }
            s.push_str("];\n");
        }
        s.push_str("}\n");
        s
    }

    /// TikZ picture with vertices on a circle; arrows of positive degree are drawn thick.
    pub fn to_tikz(&self, grading: Option<&Grading>) -> String {
        let n = self.num_vertices().max(1);
        let radius = 1.0 + n as f64 * 0.35;
        let mut s = String::from("\\begin{tikzpicture}[->,>=stealth,inner sep=1.5mm]\n");
        for (v, label) in self.vertex_labels.iter().enumerate() {
            let angle = 90.0 - 360.0 * v as f64 / n as f64;
            let _ = writeln!(s, "  \\node (v{v}) at ({angle:.1}:{radius:.2}) {{${label}$}};");
        }
        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (id, a) in self.arrows.iter().enumerate() {
            let bend = seen.entry((a.src, a.tgt)).or_insert(0);
            let style = match grading {
                Some(g) if g.degree(id) > 0 => "very thick",
                _ => "thin",
            };
            if a.src == a.tgt {
                let _ = writeln!(s, "  \\draw[{style}] (v{}) to[loop above] (v{});", a.src, a.tgt);
            } else {
                let _ = writeln!(
                    s,
                    "  \\draw[{style}] (v{}) to[bend left={}] (v{});",
                    a.src,
                    8 + 10 * *bend,
                    a.tgt
                );
            }
            *bend += 1;
        }
        s.push_str("\\end{tikzpicture}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
}

/// A path: start vertex plus arrows in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    start: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self, QuiverError> {
        let Some(&first) = arrows.first() else {
            return Err(QuiverError::BadVertex(usize::MAX));
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).tgt != q.arrow(w[1]).src {
                return Err(QuiverError::NotComposable(w[0], w[1]));
            }
        }
        Ok(Path {
            start: q.arrow(first).src,
            arrows,
        })
    }

    /// Unchecked constructor for callers that extend paths arrow by arrow.
    pub(crate) fn from_parts(start: usize, arrows: Vec<usize>) -> Self {
        Path { start, arrows }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrow(a).tgt)
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `self` followed by `other`.
    pub fn then(&self, q: &Quiver, other: &Path) -> Result<Path, QuiverError> {
        if self.target(q) != other.start {
            return Err(QuiverError::NotComposable(
                self.arrows.last().copied().unwrap_or(usize::MAX),
                other.arrows.first().copied().unwrap_or(usize::MAX),
            ));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(Path {
            start: self.start,
            arrows,
        })
    }

    /// Product-order display: `a_n ⋯ a_1`, or `e_{v}` for a trivial path.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{{{}}}", q.vertex_label(self.start));
        }
        self.arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).label.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`Path::display`].
    pub fn parse(q: &Quiver, text: &str) -> Result<Path, QuiverError> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("e_{").and_then(|r| r.strip_suffix('}')) {
            return q
                .find_vertex(rest)
                .map(Path::trivial)
                .ok_or_else(|| QuiverError::UnknownLabel(text.to_string()));
        }
        let mut arrows = text
            .split_whitespace()
            .map(|l| q.find_arrow(l).ok_or_else(|| QuiverError::UnknownLabel(l.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        arrows.reverse();
        Path::from_arrows(q, arrows)
    }
}

/// Integer degree for every arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading(Vec<i64>);

impl Grading {
    pub fn new(degrees: Vec<i64>) -> Self {
        Grading(degrees)
    }

    pub fn constant(num_arrows: usize, d: i64) -> Self {
        Grading(vec![d; num_arrows])
    }

    pub fn degree(&self, a: usize) -> i64 {
        self.0[a]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn set(&mut self, a: usize, d: i64) {
        self.0[a] = d;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows().iter().map(|&a| self.0[a]).sum()
    }

    pub fn arrows_of_degree(&self, d: i64) -> Vec<usize> {
        (0..self.0.len()).filter(|&a| self.0[a] == d).collect()
    }
}

/// Vertex and arrow maps between two quivers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverMorphism {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl QuiverMorphism {
    pub fn identity(q: &Quiver) -> Self {
        QuiverMorphism {
            vertex_map: (0..q.num_vertices()).collect(),
            arrow_map: (0..q.num_arrows()).collect(),
        }
    }

    /// Errors unless sources and targets are preserved.
    pub fn check(&self, dom: &Quiver, cod: &Quiver) -> Result<(), QuiverError> {
        if self.vertex_map.len() != dom.num_vertices() || self.arrow_map.len() != dom.num_arrows() {
            return Err(QuiverError::BadVertex(self.vertex_map.len()));
        }
        if let Some(&bad) = self.vertex_map.iter().find(|&&v| v >= cod.num_vertices()) {
            return Err(QuiverError::BadVertex(bad));
        }
        for (a, arr) in dom.arrows().iter().enumerate() {
            let b = self.arrow_map[a];
            if b >= cod.num_arrows() {
                return Err(QuiverError::NotAMorphism(a));
            }
            let img = cod.arrow(b);
            if img.src != self.vertex_map[arr.src] || img.tgt != self.vertex_map[arr.tgt] {
                return Err(QuiverError::NotAMorphism(a));
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &QuiverMorphism) -> QuiverMorphism {
        QuiverMorphism {
            vertex_map: self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| other.arrow_map[a]).collect(),
        }
    }

    pub fn map_path(&self, p: &Path) -> Path {
        Path {
            start: self.vertex_map[p.start],
            arrows: p.arrows.iter().map(|&a| self.arrow_map[a]).collect(),
        }
    }

    /// Preimages of each codomain arrow, ascending.
    pub fn arrow_fibers(&self, cod_arrows: usize) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); cod_arrows];
        for (a, &b) in self.arrow_map.iter().enumerate() {
            fibers[b].push(a);
        }
        fibers
    }

    pub fn is_surjective_on_arrows(&self, cod_arrows: usize) -> bool {
        self.arrow_fibers(cod_arrows).iter().all(|f| !f.is_empty())
    }

    pub fn is_bijective(&self, cod: &Quiver) -> bool {
        let mut vs = self.vertex_map.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut arr = self.arrow_map.clone();
        arr.sort_unstable();
        arr.dedup();
        vs.len() == self.vertex_map.len()
            && vs.len() == cod.num_vertices()
            && arr.len() == self.arrow_map.len()
            && arr.len() == cod.num_arrows()
    }
}

/// Ok when every arrow fiber is empty or degree-homogeneous; the error names a bad fiber.
pub fn is_gradable(phi: &QuiverMorphism, g: &Grading, cod_arrows: usize) -> Result<(), QuiverError> {
    for (target, fiber) in phi.arrow_fibers(cod_arrows).iter().enumerate() {
        if let Some(&first) = fiber.first() {
            if let Some(&second) = fiber.iter().find(|&&a| g.degree(a) != g.degree(first)) {
                return Err(QuiverError::NotGradable { target, first, second });
            }
        }
    }
    Ok(())
}

/// φ_* g; requires gradability and surjectivity on arrows.
pub fn pushforward_grading(phi: &QuiverMorphism, g: &Grading, cod_arrows: usize) -> Result<Grading, QuiverError> {
    is_gradable(phi, g, cod_arrows)?;
    phi.arrow_fibers(cod_arrows)
        .iter()
        .enumerate()
        .map(|(b, fiber)| fiber.first().map(|&a| g.degree(a)).ok_or(QuiverError::NotSurjective(b)))
        .collect::<Result<Vec<_>, _>>()
        .map(Grading)
}

/// φ^* g′, defined by (φ^* g′)(a) = g′(φ(a)).
pub fn pullback_grading(phi: &QuiverMorphism, g: &Grading) -> Grading {
    Grading(phi.arrow_map.iter().map(|&b| g.degree(b)).collect())
}

/// A cyclic group of the given order acting through one quiver automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverAction {
    pub order: usize,
    pub generator: QuiverMorphism,
}

impl QuiverAction {
    pub fn new(q: &Quiver, order: usize, generator: QuiverMorphism) -> Result<Self, QuiverError> {
        generator.check(q, q)?;
        let mut acc = QuiverMorphism::identity(q);
        for _ in 0..order {
            acc = acc.then(&generator);
        }
        if acc != QuiverMorphism::identity(q) || !generator.is_bijective(q) {
            return Err(QuiverError::BadActionOrder(order));
        }
        Ok(QuiverAction { order, generator })
    }

    pub fn trivial(q: &Quiver) -> Self {
        QuiverAction {
            order: 1,
            generator: QuiverMorphism::identity(q),
        }
    }
}

/// The orbit quiver with its projection and orbit member lists.
#[derive(Debug, Clone)]
pub struct OrbitQuiver {
    pub quiver: Quiver,
    pub projection: QuiverMorphism,
    pub vertex_orbits: Vec<Vec<usize>>,
    pub arrow_orbits: Vec<Vec<usize>>,
}

fn orbits(perm: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut id = vec![usize::MAX; perm.len()];
    let mut out = Vec::new();
    for x in 0..perm.len() {
        if id[x] != usize::MAX {
            continue;
        }
        let mut members = Vec::new();
        let mut y = x;
        while id[y] == usize::MAX {
            id[y] = out.len();
            members.push(y);
            y = perm[y];
        }
        members.sort_unstable();
        out.push(members);
    }
    (id, out)
}

/// Q/⟨g⟩: orbits are numbered by their smallest member and labelled by it.
pub fn quotient_by_action(q: &Quiver, action: &QuiverAction) -> OrbitQuiver {
    let (vid, vorbits) = orbits(&action.generator.vertex_map);
    let (aid, aorbits) = orbits(&action.generator.arrow_map);
    let labels = vorbits
        .iter()
        .map(|o| format!("[{}]", q.vertex_label(o[0])))
        .collect();
    let mut quiver = Quiver::new(labels);
    for o in &aorbits {
        let a = q.arrow(o[0]);
        quiver
            .add_arrow(vid[a.src], vid[a.tgt], format!("[{}]", a.label))
            .expect("orbit labels are unique");
    }
    OrbitQuiver {
        quiver,
        projection: QuiverMorphism {
            vertex_map: vid,
            arrow_map: aid,
        },
        vertex_orbits: vorbits,
        arrow_orbits: aorbits,
    }
}

/// Path degree over a grading, for callers that hold only arrow ids.
pub fn path_degree(g: &Grading, p: &Path) -> i64 {
    g.path_degree(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oriented triangle 0 → 1 → 2 → 0 plus a chord 0 → 2.
    fn triangle() -> Quiver {
        let mut q = Quiver::new(vec!["0".into(), "1".into(), "2".into()]);
        q.add_arrow(0, 1, "a").unwrap();
        q.add_arrow(1, 2, "b").unwrap();
        q.add_arrow(2, 0, "c").unwrap();
        q.add_arrow(0, 2, "d").unwrap();
        q
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut q = triangle();
        assert_eq!(q.add_arrow(0, 1, "a"), Err(QuiverError::DuplicateLabel("a".into())));
    }

    #[test]
    fn display_parse_round_trip() {
        let q = triangle();
        let p = Path::from_arrows(&q, vec![0, 1, 2]).unwrap();
        assert_eq!(p.display(&q), "c b a");
        assert_eq!(Path::parse(&q, "c b a").unwrap(), p);
        assert_eq!(Path::parse(&q, "e_{1}").unwrap(), Path::trivial(1));
        assert!(Path::from_arrows(&q, vec![0, 0]).is_err());
    }

    #[test]
    fn path_degrees() {
        let q = triangle();
        let g = Grading::new(vec![1, 0, 2, 5]);
        assert_eq!(g.path_degree(&Path::trivial(0)), 0);
        let p = Path::from_arrows(&q, vec![0, 1]).unwrap();
        let r = Path::from_arrows(&q, vec![2]).unwrap();
        assert_eq!(g.path_degree(&p.then(&q, &r).unwrap()), g.path_degree(&p) + g.path_degree(&r));
    }

    #[test]
    fn rotation_quotient() {
        let mut q = Quiver::new(vec!["0".into(), "1".into(), "2".into()]);
        for i in 0..3 {
            q.add_arrow(i, (i + 1) % 3, format!("x{i}")).unwrap();
        }
        let rot = QuiverMorphism {
            vertex_map: vec![1, 2, 0],
            arrow_map: vec![1, 2, 0],
        };
        let act = QuiverAction::new(&q, 3, rot.clone()).unwrap();
        let oq = quotient_by_action(&q, &act);
        assert_eq!((oq.quiver.num_vertices(), oq.quiver.num_arrows()), (1, 1));
        oq.projection.check(&q, &oq.quiver).unwrap();
        assert_eq!(rot.then(&oq.projection), oq.projection);
        assert!(QuiverAction::new(&q, 2, rot).is_err());
    }

    #[test]
    fn trivial_action_gives_copy() {
        let q = triangle();
        let oq = quotient_by_action(&q, &QuiverAction::trivial(&q));
        assert_eq!(oq.projection, QuiverMorphism::identity(&q));
        assert_eq!(oq.quiver.num_arrows(), q.num_arrows());
    }

    #[test]
    fn gradability_and_push_pull() {
        let mut q = Quiver::new(vec!["0".into(), "1".into(), "2".into()]);
        for i in 0..3 {
            q.add_arrow(i, (i + 1) % 3, format!("x{i}")).unwrap();
        }
        let mut point = Quiver::new(vec!["*".into()]);
        point.add_arrow(0, 0, "y").unwrap();
        let phi = QuiverMorphism {
            vertex_map: vec![0; 3],
            arrow_map: vec![0; 3],
        };
        phi.check(&q, &point).unwrap();
        let bad = Grading::new(vec![0, 1, 0]);
        assert_eq!(
            is_gradable(&phi, &bad, 1),
            Err(QuiverError::NotGradable {
                target: 0,
                first: 0,
                second: 1
            })
        );
        let g = Grading::constant(1, 4);
        let pulled = pullback_grading(&phi, &g);
        assert_eq!(pushforward_grading(&phi, &pulled, 1).unwrap(), g);
        let id = QuiverMorphism::identity(&q);
        assert_eq!(pushforward_grading(&id, &bad, 3).unwrap(), bad);
    }

    #[test]
    fn exports_mention_every_arrow() {
        let q = triangle();
        let g = Grading::new(vec![1, 0, 0, 1]);
        let dot = q.to_dot("Q", Some(&g));
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("degree=1"));
        let json = serde_json::to_value(q.to_json(Some(&g))).unwrap();
        assert_eq!(json["arrows"][3]["degree"], 1);
        assert_eq!(q.to_tikz(None).matches("\\draw").count(), 4);
    }

    #[test]
    fn cycle_detection() {
        let q = triangle();
        assert!(q.has_oriented_cycle());
        let (sub, _) = q.subquiver(|a| a != 2);
        assert!(!sub.has_oriented_cycle());
    }
}
