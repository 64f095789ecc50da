//! McKay quivers of A = ⟨α⟩ and G, the comparison quiver Q̃_G, the morphisms Φ and Ψ,
//! the action φ of G/A on Q_A, and the twist by det_W.
//!
//! W is the defining representation V, or V ⊕ det_V⁻¹ when embedded. Every
//! irreducible is cyclic on its first basis vector b_0 with b_k = β^k b_0, so an
//! arrow S → T is stored as the image of b_0 in W ⊗ T and extended by the β-action.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::exact::{frac, CycNum, RootSum};
use crate::groups::{
    character_table_row, defining_rep, inner_product_from_rows, irreps, GroupError, IrrepKind, MetacyclicParams,
    MonomialMatrix, MonomialRep, RepSystem,
};
use crate::quiver::{quotient_by_action, Quiver, QuiverAction, QuiverError, QuiverMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McKayError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("twist of arrow {0} is not proportional to a unique arrow")]
    TwistNotMonomial(usize),
    #[error("vertex {0} has no image under the twist")]
    TwistVertex(usize),
    #[error("orbit quiver is not isomorphic to the comparison quiver: {0}")]
    OrbitIso(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type")]
pub enum VertexKind {
    /// Character ε_m^i of A, or an orbit representative of Q̃_G.
    Abelian { i: u64 },
    Induced { i: u64 },
    Split { i: u64, l: u64 },
}

/// Meaning of an arrow; `p = s` denotes the extra basis vector of the embedded W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type")]
pub enum ArrowKind {
    /// x^i_k : i → i − r_k.
    Abelian { i: u64, k: u64 },
    /// x^i_{p,a} : T_i → T_j with r^a j ≡ i − r^p.
    Induced { i: u64, j: u64, p: u64, a: u64 },
    /// x^{i(ℓ)}_{p,0} : T_i → T_j^{(ℓ)}.
    ToSplit { i: u64, j: u64, l: u64, p: u64 },
    /// x^{(ℓ)i}_{p,0} : T_i^{(ℓ)} → T_j.
    FromSplit { i: u64, l: u64, j: u64, p: u64 },
    /// v → τ(v) through the extra basis vector.
    Embedding { from: usize, to: usize },
    /// An arrow of Q̃_G from the orbit representative i.
    Tilde { i: u64, p: u64, a: u64 },
}

/// Sparse element of W ⊗ T: entries (W index, T index, coefficient), sorted, no empty sums.
pub type TensorVec = Vec<(usize, usize, RootSum)>;

fn normalise(mut v: TensorVec) -> TensorVec {
    v.sort_by_key(|e| (e.0, e.1));
    let mut out: TensorVec = Vec::with_capacity(v.len());
    for (w, t, c) in v {
        match out.last_mut() {
            Some((lw, lt, lc)) if *lw == w && *lt == t => *lc = lc.add(&c),
            _ => out.push((w, t, c)),
        }
    }
    out.retain(|e| !e.2.is_empty());
    out
}

/// g_W ⊗ g_T applied to a sparse vector.
fn act(v: &TensorVec, gw: &MonomialMatrix, gt: &MonomialMatrix) -> TensorVec {
    let order = gw.order();
    normalise(
        v.iter()
            .map(|(w, t, c)| {
                let (w2, pw) = gw.image(*w);
                let (t2, pt) = gt.image(*t);
                (w2, t2, c.mul(&RootSum::root(order, (pw + pt) as i64)))
            })
            .collect(),
    )
}

/// An arrow as a G-map S → W ⊗ T: `columns[k]` is the image of b_k(S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowMap {
    pub order: u64,
    pub w_dim: usize,
    pub tgt_dim: usize,
    pub columns: Vec<TensorVec>,
}

/// A vertex representation; `beta` is absent for the abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRep {
    pub kind: VertexKind,
    pub alpha: MonomialMatrix,
    pub beta: Option<MonomialMatrix>,
}

impl VertexRep {
    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    fn as_monomial_rep(&self) -> Option<MonomialRep> {
        self.beta.clone().map(|beta| MonomialRep {
            alpha: self.alpha.clone(),
            beta,
        })
    }
}

/// τ = − ⊗ det_W with its pinned identifications ι_S : S ⊗ det_W → τ(S).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
    /// τ(a) = scalars[a] · arrow_map[a] as G-maps.
    pub scalars: Vec<CycNum>,
    /// Column k sends b_k(S) ⊗ d to a root multiple of a basis vector of τ(S).
    pub iota: Vec<MonomialMatrix>,
    /// (α, β) exponents of det_W.
    pub det: (u64, u64),
}

impl Twist {
    pub fn morphism(&self) -> QuiverMorphism {
        QuiverMorphism {
            vertex_map: self.vertex_map.clone(),
            arrow_map: self.arrow_map.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
            && self.arrow_map.iter().enumerate().all(|(i, &a)| i == a)
            && self.scalars.iter().all(CycNum::is_one)
    }

    /// Smallest k ≥ 1 with τ^k the identity on vertices and arrows.
    pub fn order(&self) -> usize {
        let id = (0..self.vertex_map.len()).collect::<Vec<_>>();
        let mut cur = self.morphism();
        let mut k = 1;
        while cur.vertex_map != id || cur.arrow_map.iter().enumerate().any(|(i, &a)| i != a) {
            cur = cur.then(&self.morphism());
            k += 1;
        }
        k
    }
}

/// A McKay-type quiver with the representation data needed to compose arrows.
#[derive(Debug, Clone)]
pub struct McKayData {
    pub params: MetacyclicParams,
    pub embedded: bool,
    pub quiver: Quiver,
    pub vertices: Vec<VertexRep>,
    pub arrows: Vec<ArrowKind>,
    pub maps: Vec<ArrowMap>,
    pub w: VertexRep,
    pub twist: Twist,
}

impl McKayData {
    pub fn order(&self) -> u64 {
        self.params.order()
    }

    /// n = dim W, the superpotential degree.
    pub fn degree(&self) -> usize {
        self.w.dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.vertices.iter().map(VertexRep::dim).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.w.beta.is_none()
    }

    pub fn find_vertex(&self, kind: VertexKind) -> Option<usize> {
        self.vertices.iter().position(|v| v.kind == kind)
    }

    /// Quiver JSON plus the arrow kinds under "mckay".
    pub fn to_json(&self, grading: Option<&crate::quiver::Grading>) -> serde_json::Value {
        let mut v = serde_json::to_value(self.quiver.to_json(grading)).expect("serialisable");
        v["mckay"] = serde_json::json!({
            "group": [self.params.m(), self.params.r(), self.params.s(), self.params.t()],
            "embedded": self.embedded,
            "vertices": self.vertices.iter().map(|x| x.kind).collect::<Vec<_>>(),
            "arrows": self.arrows,
        });
        v
    }
}

/// Weight in ℤ/m of basis vector k of a diagonal α-image.
fn weight(params: &MetacyclicParams, alpha: &MonomialMatrix, k: usize) -> u64 {
    alpha.image(k).1 / params.s()
}

fn w_rep(params: &MetacyclicParams, embedded: bool, abelian: bool) -> VertexRep {
    let d = defining_rep(params, embedded);
    VertexRep {
        kind: VertexKind::Abelian { i: 1 },
        alpha: d.alpha,
        beta: (!abelian).then_some(d.beta),
    }
}

fn abelian_label(i: u64, k: u64) -> String {
    format!("x^{{{i}}}_{{{k}}}")
}

/// Q_A (or Q_{A′}): vertices ℤ/m, arrows x^i_k : i → i − r_k; embedding arrows come last.
pub fn mckay_abelian(params: &MetacyclicParams, embedded: bool) -> Result<McKayData, McKayError> {
    let m = params.m();
    let order = params.order();
    let w = w_rep(params, embedded, true);
    let vertices: Vec<VertexRep> = (0..m)
        .map(|i| VertexRep {
            kind: VertexKind::Abelian { i },
            alpha: MonomialMatrix::diagonal(order, vec![params.eps_m(i as i64)]),
            beta: None,
        })
        .collect();
    let mut quiver = Quiver::new((0..m).map(|i| i.to_string()).collect());
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    let s = params.s() as usize;
    let passes = std::iter::once(0..s).chain(embedded.then_some(s..s + 1));
    for range in passes {
        for i in 0..m {
            for k in range.clone() {
                let j = (i + m - weight(params, &w.alpha, k)) % m;
                quiver.add_arrow(i as usize, j as usize, abelian_label(i, k as u64))?;
                arrows.push(ArrowKind::Abelian { i, k: k as u64 });
                maps.push(ArrowMap {
                    order,
                    w_dim: w.dim(),
                    tgt_dim: 1,
                    columns: vec![vec![(k, 0, RootSum::one(order))]],
                });
            }
        }
    }
    let mut data = McKayData {
        params: params.clone(),
        embedded,
        quiver,
        vertices,
        arrows,
        maps,
        w,
        twist: Twist {
            vertex_map: Vec::new(),
            arrow_map: Vec::new(),
            scalars: Vec::new(),
            iota: Vec::new(),
            det: (0, 0),
        },
    };
    data.twist = twist_automorphism(&data)?;
    Ok(data)
}

fn vertex_label(kind: VertexKind) -> String {
    match kind {
        VertexKind::Abelian { i } | VertexKind::Induced { i } => i.to_string(),
        VertexKind::Split { i, l } => format!("{i}^{{({l})}}"),
    }
}

fn split_source_label(kind: VertexKind) -> String {
    match kind {
        VertexKind::Split { i, l } => format!("{i}({l})"),
        VertexKind::Abelian { i } | VertexKind::Induced { i } => i.to_string(),
    }
}

/// Q_G (or Q_{G′}) on the pinned arrow bases; embedding arrows come last.
pub fn mckay_metacyclic(reps: &RepSystem, embedded: bool) -> Result<McKayData, McKayError> {
    reps.require_closed()?;
    let params = reps.params().clone();
    let order = params.order();
    let s = params.s() as usize;
    let w = w_rep(&params, embedded, false);
    let wb = w.beta.clone().expect("metacyclic W has β");
    let vertices: Vec<VertexRep> = irreps(reps)
        .into_iter()
        .map(|irr| VertexRep {
            kind: match irr.kind {
                IrrepKind::Induced(i) => VertexKind::Induced { i },
                IrrepKind::Split(i, l) => VertexKind::Split { i, l },
            },
            alpha: irr.rep.alpha,
            beta: Some(irr.rep.beta),
        })
        .collect();
    let mut quiver = Quiver::new(vertices.iter().map(|v| vertex_label(v.kind)).collect());
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    let passes = std::iter::once(0..s).chain(embedded.then_some(s..s + 1));
    for range in passes {
        for (si, src) in vertices.iter().enumerate() {
            let src_beta = src.beta.as_ref().expect("metacyclic");
            let src_weight = weight(&params, &src.alpha, 0);
            for p in range.clone() {
                for (ti, tgt) in vertices.iter().enumerate() {
                    let tgt_beta = tgt.beta.as_ref().expect("metacyclic");
                    let matches: Vec<usize> = (0..tgt.dim())
                        .filter(|&a| (weight(&params, &w.alpha, p) + weight(&params, &tgt.alpha, a)) % params.m() == src_weight)
                        .collect();
                    for a in matches {
                        let base = vec![(p, a, RootSum::one(order))];
                        let (kind, y, label) = match (src.kind, tgt.kind) {
                            _ if p == s => {
                                let y = match src.kind {
                                    VertexKind::Split { .. } if tgt.dim() > 1 => {
                                        if a != 0 {
                                            continue;
                                        }
                                        eigen_projection(&base, &wb, tgt_beta, src_beta.image(0).1, s)
                                    }
                                    VertexKind::Split { .. } => {
                                        // f ⊗ w must already carry the β-eigenvalue of the source
                                        if act(&base, &wb, tgt_beta)[0].2 != RootSum::root(order, src_beta.image(0).1 as i64) {
                                            continue;
                                        }
                                        base
                                    }
                                    _ => base,
                                };
                                let label = format!("z^{{{}}}", split_source_label(src.kind));
                                (ArrowKind::Embedding { from: si, to: ti }, y, label)
                            }
                            (VertexKind::Induced { i }, VertexKind::Induced { i: j }) => (
                                ArrowKind::Induced {
                                    i,
                                    j,
                                    p: p as u64,
                                    a: a as u64,
                                },
                                base,
                                format!("x^{{{i}}}_{{{p},{a}}}"),
                            ),
                            (VertexKind::Induced { i }, VertexKind::Split { i: j, l }) => {
                                // (ε_m^{−tj}/s)·λ_{j,ℓ}
                                let e = params.eps_m(-((params.t() * j) as i64)) + params.lambda(j, l);
                                let y = vec![(p, 0, RootSum::monomial(order, e as i64, frac(1, s as i64)))];
                                (
                                    ArrowKind::ToSplit { i, j, l, p: p as u64 },
                                    y,
                                    format!("x^{{{i}({l})}}_{{{p},0}}"),
                                )
                            }
                            (VertexKind::Split { i, l }, VertexKind::Induced { i: j }) => {
                                if a != 0 {
                                    continue;
                                }
                                let y = eigen_projection(&base, &wb, tgt_beta, src_beta.image(0).1, s);
                                (
                                    ArrowKind::FromSplit { i, l, j, p: p as u64 },
                                    y,
                                    format!("x^{{({l}){i}}}_{{{p},0}}"),
                                )
                            }
                            _ => continue,
                        };
                        let mut columns = vec![y];
                        for k in 1..src.dim() {
                            columns.push(act(&columns[k - 1], &wb, tgt_beta));
                        }
                        quiver.add_arrow(si, ti, label)?;
                        arrows.push(kind);
                        maps.push(ArrowMap {
                            order,
                            w_dim: w.dim(),
                            tgt_dim: tgt.dim(),
                            columns,
                        });
                    }
                }
            }
        }
    }
    let mut data = McKayData {
        params,
        embedded,
        quiver,
        vertices,
        arrows,
        maps,
        w,
        twist: Twist {
            vertex_map: Vec::new(),
            arrow_map: Vec::new(),
            scalars: Vec::new(),
            iota: Vec::new(),
            det: (0, 0),
        },
    };
    data.twist = twist_automorphism(&data)?;
    Ok(data)
}

/// Σ_{k<s} λ^{s−1−k} (β_W ⊗ β_T)^k y, the β-eigencomponent of y for eigenvalue ζ^λ.
fn eigen_projection(y: &TensorVec, wb: &MonomialMatrix, tb: &MonomialMatrix, lambda: u64, s: usize) -> TensorVec {
    let order = wb.order();
    let mut acc = Vec::new();
    let mut cur = y.clone();
    for k in 0..s {
        let coeff = RootSum::root(order, (lambda * (s - 1 - k) as u64) as i64);
        acc.extend(cur.iter().map(|(w, t, c)| (*w, *t, c.mul(&coeff))));
        cur = act(&cur, wb, tb);
    }
    normalise(acc)
}

fn det_character(data: &McKayData) -> Result<(u64, u64), McKayError> {
    let odd = || McKayError::TwistVertex(usize::MAX);
    let da = data.w.alpha.det_exponent().ok_or_else(odd)?;
    let db = match &data.w.beta {
        Some(b) => b.det_exponent().ok_or_else(odd)?,
        None => 0,
    };
    Ok((da, db))
}

/// Dense coefficient vector of a sparse tensor, indexed w·tgt_dim + t.
pub fn dense(order: u64, v: &TensorVec, w_dim: usize, tgt_dim: usize) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(order); w_dim * tgt_dim];
    for (w, t, c) in v {
        out[w * tgt_dim + t] = &out[w * tgt_dim + t] + &c.to_cyc();
    }
    out
}

/// `Some(μ)` with x = μ·y, both nonzero.
fn proportional(x: &[CycNum], y: &[CycNum]) -> Option<CycNum> {
    let k = y.iter().position(|c| !c.is_zero())?;
    let mu = x[k].try_div(&y[k]).ok()?;
    if mu.is_zero() {
        return None;
    }
    x.iter().zip(y).all(|(a, b)| *a == &mu * b).then_some(mu)
}

/// τ = − ⊗ det_W, found by matching weights (and β-eigenvalues on one-dimensional vertices).
pub fn twist_automorphism(data: &McKayData) -> Result<Twist, McKayError> {
    let params = &data.params;
    let order = params.order();
    let m = params.m();
    let (da, db) = det_character(data)?;
    let mut vertex_map = Vec::with_capacity(data.vertices.len());
    let mut iota = Vec::with_capacity(data.vertices.len());
    for (vi, v) in data.vertices.iter().enumerate() {
        let target_weight = (weight(params, &v.alpha, 0) + da / params.s()) % m;
        let beta_shift = |x: &MonomialMatrix| (x.image(0).1 + db) % order;
        let found = data.vertices.iter().enumerate().find_map(|(ui, u)| {
            if u.dim() != v.dim() {
                return None;
            }
            let a = (0..u.dim()).find(|&a| weight(params, &u.alpha, a) == target_weight)?;
            if v.dim() == 1 {
                if let (Some(vb), Some(ub)) = (&v.beta, &u.beta) {
                    if ub.image(0).1 != beta_shift(vb) {
                        return None;
                    }
                }
            }
            Some((ui, a))
        });
        let (ui, a) = found.ok_or(McKayError::TwistVertex(vi))?;
        let u = &data.vertices[ui];
        // b_k ⊗ d = det_β^{−k} β^k (b_0 ⊗ d) ↦ det_β^{−k} β_U^k b_a
        let mut perm = Vec::with_capacity(v.dim());
        let mut phase = Vec::with_capacity(v.dim());
        for k in 0..v.dim() {
            let (row, ph) = match &u.beta {
                Some(ub) => ub.pow(k as u64).image(a),
                None => (a, 0),
            };
            perm.push(row);
            phase.push((ph + order * k as u64 - db * k as u64 % order) % order);
        }
        vertex_map.push(ui);
        iota.push(MonomialMatrix::new(order, perm, phase));
    }

    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (id, a) in data.quiver.arrows().iter().enumerate() {
        by_pair.entry((a.src, a.tgt)).or_default().push(id);
    }
    let mut arrow_map = Vec::with_capacity(data.maps.len());
    let mut scalars = Vec::with_capacity(data.maps.len());
    for (id, arrow) in data.quiver.arrows().iter().enumerate() {
        let (s_img, t_img) = (vertex_map[arrow.src], vertex_map[arrow.tgt]);
        let iota_s = &iota[arrow.src];
        let k = (0..iota_s.dim())
            .find(|&k| iota_s.image(k).0 == 0)
            .expect("ι is a bijection on basis vectors");
        let back = order - iota_s.image(k).1;
        let iota_t = &iota[arrow.tgt];
        let image: TensorVec = normalise(
            data.maps[id].columns[k]
                .iter()
                .map(|(w, t, c)| {
                    let (t2, ph) = iota_t.image(*t);
                    (*w, t2, c.mul(&RootSum::root(order, (ph + back) as i64)))
                })
                .collect(),
        );
        let tdim = data.vertices[t_img].dim();
        let x = dense(order, &image, data.w.dim(), tdim);
        let candidates = by_pair.get(&(s_img, t_img)).map(Vec::as_slice).unwrap_or(&[]);
        let hits: Vec<(usize, CycNum)> = candidates
            .iter()
            .filter_map(|&b| {
                let y = dense(order, &data.maps[b].columns[0], data.w.dim(), tdim);
                proportional(&x, &y).map(|mu| (b, mu))
            })
            .collect();
        match hits.as_slice() {
            [(b, mu)] => {
                arrow_map.push(*b);
                scalars.push(mu.clone());
            }
            _ => return Err(McKayError::TwistNotMonomial(id)),
        }
    }
    Ok(Twist {
        vertex_map,
        arrow_map,
        scalars,
        iota,
        det: (da, db),
    })
}

/// Arrow counts S → T for every ordered pair, as a map (S, T) ↦ count.
pub fn arrow_multiplicities(data: &McKayData) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for a in data.quiver.arrows() {
        *out.entry((a.src, a.tgt)).or_insert(0) += 1;
    }
    out
}

/// dim Hom(S, W ⊗ T) for every ordered pair by characters; abelian data sums over ⟨α⟩ only.
pub fn oracle_multiplicities(data: &McKayData) -> Result<BTreeMap<(usize, usize), u64>, McKayError> {
    let params = &data.params;
    let mut out = BTreeMap::new();
    if data.is_abelian() {
        let m = params.m();
        for (si, s) in data.vertices.iter().enumerate() {
            for (ti, t) in data.vertices.iter().enumerate() {
                // (1/m) Σ_a χ_S(α^a)* χ_W(α^a) χ_T(α^a), evaluated with integer root counters
                let mut acc = crate::exact::RootCounter::new(params.order());
                for a in 0..m {
                    let sa = s.alpha.pow(a).trace_exponents();
                    let wa = data.w.alpha.pow(a).trace_exponents();
                    let ta = t.alpha.pow(a).trace_exponents();
                    for e1 in &sa {
                        for e2 in &wa {
                            for e3 in &ta {
                                acc.bump(params.order() - e1 + e2 + e3, 1);
                            }
                        }
                    }
                }
                let v = acc
                    .to_cyc()
                    .to_rational()
                    .map(|q| q / crate::exact::rat(m as i64))
                    .filter(|q| q.is_integer())
                    .ok_or_else(|| GroupError::NonIntegral(format!("{si} → {ti}")))?;
                let v: u64 = v.to_integer().try_into().map_err(|_| GroupError::NonIntegral(v.to_string()))?;
                if v > 0 {
                    out.insert((si, ti), v);
                }
            }
        }
        return Ok(out);
    }
    let w = data.w.as_monomial_rep().expect("metacyclic");
    let chi_w = character_table_row(params, &w);
    let rows: Vec<_> = data
        .vertices
        .iter()
        .map(|v| character_table_row(params, &v.as_monomial_rep().expect("metacyclic")))
        .collect();
    for (si, chi_s) in rows.iter().enumerate() {
        for (ti, chi_t) in rows.iter().enumerate() {
            let v = inner_product_from_rows(params, chi_s, &chi_w, chi_t)?;
            if v > 0 {
                out.insert((si, ti), v);
            }
        }
    }
    Ok(out)
}

/// Checks every arrow map against the α and β actions.
pub fn check_equivariance(data: &McKayData) -> Result<(), usize> {
    for (id, arrow) in data.quiver.arrows().iter().enumerate() {
        let map = &data.maps[id];
        let src = &data.vertices[arrow.src];
        let tgt = &data.vertices[arrow.tgt];
        let mut gens = vec![(&data.w.alpha, &src.alpha, &tgt.alpha)];
        if let (Some(wb), Some(sb), Some(tb)) = (&data.w.beta, &src.beta, &tgt.beta) {
            gens.push((wb, sb, tb));
        }
        for (gw, gs, gt) in gens {
            for k in 0..src.dim() {
                // A(g b_k) = (g ⊗ g)(A b_k)
                let (row, ph) = gs.image(k);
                let lhs: TensorVec = map.columns[row]
                    .iter()
                    .map(|(w, t, c)| (*w, *t, c.mul(&RootSum::root(map.order, ph as i64))))
                    .collect();
                let rhs = act(&map.columns[k], gw, gt);
                let l = dense(map.order, &normalise(lhs), map.w_dim, map.tgt_dim);
                let r = dense(map.order, &rhs, map.w_dim, map.tgt_dim);
                if l != r {
                    return Err(id);
                }
            }
        }
    }
    Ok(())
}

/// The comparison quiver Q̃_G (or Q̃_{G′}) with its lookup of (representative, p) ↦ arrow.
#[derive(Debug, Clone)]
pub struct TildeQuiver {
    pub quiver: Quiver,
    pub reps: RepSystem,
    pub embedded: bool,
    /// Vertex index of each element of D.
    pub vertex_of: BTreeMap<u64, usize>,
    pub arrows: Vec<ArrowKind>,
    by_rep_p: HashMap<(u64, u64), usize>,
    by_fixed: HashMap<u64, usize>,
    by_embedding: HashMap<u64, usize>,
}

impl TildeQuiver {
    /// The arrow from ul(i) that represents the φ-orbit of x^i_q.
    pub fn orbit_arrow(&self, i: u64, q: u64) -> usize {
        let p = self.reps.params();
        let u = self.reps.ul(i);
        if p.is_fixed(u) {
            self.by_fixed[&u]
        } else {
            let s = p.s();
            self.by_rep_p[&(u, (q + s - self.reps.kappa(i)) % s)]
        }
    }

    pub fn embedding_arrow(&self, i: u64) -> usize {
        self.by_embedding[&self.reps.ul(i)]
    }
}

/// Q̃_G: vertices D (F first), one arrow per φ-orbit of arrows of Q_A.
pub fn tilde_quiver(reps: &RepSystem, embedded: bool) -> Result<TildeQuiver, McKayError> {
    let params = reps.params();
    let m = params.m();
    let s = params.s();
    let order: Vec<u64> = reps
        .fixed()
        .iter()
        .copied()
        .chain(reps.induced())
        .collect();
    let vertex_of: BTreeMap<u64, usize> = order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut quiver = Quiver::new(order.iter().map(u64::to_string).collect());
    let mut arrows = Vec::new();
    let mut by_rep_p = HashMap::new();
    let mut by_fixed = HashMap::new();
    let mut by_embedding = HashMap::new();
    for &u in &order {
        if params.is_fixed(u) {
            let p = (0..s)
                .find(|&p| reps.ul((u + m - params.r_pow(p)) % m) == (u + m - params.r_pow(p)) % m)
                .expect("exactly one target lies in D");
            let y = (u + m - params.r_pow(p)) % m;
            let id = quiver.add_arrow(vertex_of[&u], vertex_of[&y], format!("x^{{{u}}}_{{{p},0}}"))?;
            arrows.push(ArrowKind::Tilde { i: u, p, a: 0 });
            by_fixed.insert(u, id);
        } else {
            for p in 0..s {
                let y = (u + m - params.r_pow(p)) % m;
                let j = reps.ul(y);
                let a = if params.is_fixed(j) { 0 } else { reps.kappa(y) };
                let id = quiver.add_arrow(vertex_of[&u], vertex_of[&j], format!("x^{{{u}}}_{{{p},{a}}}"))?;
                arrows.push(ArrowKind::Tilde { i: u, p, a });
                by_rep_p.insert((u, p), id);
            }
        }
    }
    if embedded {
        reps.require_closed()?;
        for &u in &order {
            let id = quiver.add_arrow(vertex_of[&u], vertex_of[&((u + params.c()) % m)], format!("z^{{{u}}}"))?;
            arrows.push(ArrowKind::Embedding {
                from: vertex_of[&u],
                to: vertex_of[&((u + params.c()) % m)],
            });
            by_embedding.insert(u, id);
        }
    }
    Ok(TildeQuiver {
        quiver,
        reps: reps.clone(),
        embedded,
        vertex_of,
        arrows,
        by_rep_p,
        by_fixed,
        by_embedding,
    })
}

/// Φ : Q_A → Q̃_G, i ↦ ul(i).
pub fn phi_morphism(qa: &McKayData, tilde: &TildeQuiver) -> Result<QuiverMorphism, McKayError> {
    let reps = &tilde.reps;
    let s = qa.params.s();
    let vertex_map = (0..qa.params.m()).map(|i| tilde.vertex_of[&reps.ul(i)]).collect();
    let arrow_map = qa
        .arrows
        .iter()
        .map(|k| match *k {
            ArrowKind::Abelian { i, k } if k == s => tilde.embedding_arrow(i),
            ArrowKind::Abelian { i, k } => tilde.orbit_arrow(i, k),
            _ => unreachable!("Q_A carries abelian arrows only"),
        })
        .collect();
    let phi = QuiverMorphism { vertex_map, arrow_map };
    phi.check(&qa.quiver, &tilde.quiver)?;
    Ok(phi)
}

/// Ψ : Q_G → Q̃_G, forgetting the splitting of fixed points.
pub fn psi_morphism(qg: &McKayData, tilde: &TildeQuiver) -> Result<QuiverMorphism, McKayError> {
    let vertex_map: Vec<usize> = qg
        .vertices
        .iter()
        .map(|v| match v.kind {
            VertexKind::Induced { i } | VertexKind::Split { i, .. } | VertexKind::Abelian { i } => tilde.vertex_of[&i],
        })
        .collect();
    let arrow_map = qg
        .arrows
        .iter()
        .map(|k| match *k {
            ArrowKind::Induced { i, p, .. } | ArrowKind::ToSplit { i, p, .. } => tilde.by_rep_p[&(i, p)],
            ArrowKind::FromSplit { i, .. } => tilde.by_fixed[&i],
            ArrowKind::Embedding { from, .. } => match qg.vertices[from].kind {
                VertexKind::Induced { i } | VertexKind::Split { i, .. } | VertexKind::Abelian { i } => {
                    tilde.embedding_arrow(i)
                }
            },
            ArrowKind::Abelian { .. } | ArrowKind::Tilde { .. } => unreachable!("Q_G arrows only"),
        })
        .collect();
    let psi = QuiverMorphism { vertex_map, arrow_map };
    psi.check(&qg.quiver, &tilde.quiver)?;
    Ok(psi)
}

/// φ : i ↦ ri, x^i_q ↦ x^{ri}_{q+1}, embedding arrows x^i_s ↦ x^{ri}_s.
pub fn phi_action(qa: &McKayData) -> Result<QuiverAction, McKayError> {
    let p = &qa.params;
    let (m, r, s) = (p.m(), p.r(), p.s());
    let index: HashMap<(u64, u64), usize> = qa
        .arrows
        .iter()
        .enumerate()
        .map(|(id, k)| match *k {
            ArrowKind::Abelian { i, k } => ((i, k), id),
            _ => unreachable!("Q_A carries abelian arrows only"),
        })
        .collect();
    let arrow_map = qa
        .arrows
        .iter()
        .map(|k| match *k {
            ArrowKind::Abelian { i, k } if k == s => index[&(r * i % m, s)],
            ArrowKind::Abelian { i, k } => index[&(r * i % m, (k + 1) % s)],
            _ => unreachable!(),
        })
        .collect();
    let generator = QuiverMorphism {
        vertex_map: (0..m).map(|i| (r * i % m) as usize).collect(),
        arrow_map,
    };
    Ok(QuiverAction::new(&qa.quiver, s as usize, generator)?)
}

/// Checks that Φ is constant on φ-orbits and induces an isomorphism Q_A/(G/A) → Q̃_G.
pub fn verify_orbit_iso(qa: &McKayData, tilde: &TildeQuiver) -> Result<QuiverMorphism, McKayError> {
    let phi = phi_morphism(qa, tilde)?;
    let action = phi_action(qa)?;
    let orbit = quotient_by_action(&qa.quiver, &action);
    let induced = QuiverMorphism {
        vertex_map: orbit.vertex_orbits.iter().map(|o| phi.vertex_map[o[0]]).collect(),
        arrow_map: orbit.arrow_orbits.iter().map(|o| phi.arrow_map[o[0]]).collect(),
    };
    for (k, o) in orbit.vertex_orbits.iter().enumerate() {
        if o.iter().any(|&v| phi.vertex_map[v] != induced.vertex_map[k]) {
            return Err(McKayError::OrbitIso(format!("Φ is not constant on the vertex orbit of {}", o[0])));
        }
    }
    for (k, o) in orbit.arrow_orbits.iter().enumerate() {
        if o.iter().any(|&a| phi.arrow_map[a] != induced.arrow_map[k]) {
            return Err(McKayError::OrbitIso(format!(
                "Φ is not constant on the orbit of {}",
                qa.quiver.arrow(o[0]).label
            )));
        }
    }
    induced.check(&orbit.quiver, &tilde.quiver)?;
    if !induced.is_bijective(&tilde.quiver) {
        return Err(McKayError::OrbitIso("induced map is not bijective".into()));
    }
    Ok(induced)
}

/// τ on Q̃_G: i ↦ i + c.
pub fn tilde_twist(tilde: &TildeQuiver, qa: &McKayData, phi: &QuiverMorphism) -> QuiverMorphism {
    // τ_A descends along Φ; read the induced map off any preimage
    let mut vertex_map = vec![usize::MAX; tilde.quiver.num_vertices()];
    let mut arrow_map = vec![usize::MAX; tilde.quiver.num_arrows()];
    for v in 0..qa.quiver.num_vertices() {
        vertex_map[phi.vertex_map[v]] = phi.vertex_map[qa.twist.vertex_map[v]];
    }
    for a in 0..qa.quiver.num_arrows() {
        arrow_map[phi.arrow_map[a]] = phi.arrow_map[qa.twist.arrow_map[a]];
    }
    QuiverMorphism { vertex_map, arrow_map }
}
