//! Metacyclic groups ⟨α, β | α^m = 1, β⁻¹αβ = α^r, β^s = α^t⟩ acting on ℂ^s.
//!
//! All scalars live in ℚ(ζ_M) with M = s·m, so ε_m = ζ_M^s, ε_s = ζ_M^m and the
//! s-th root η_i of ε_m^{ti} is ζ_M^{t·i} with i read in {0, …, m−1}.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{CycMatrix, CycNum, Rational, RootCounter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("conditions violated: {}", .0.join(", "))]
    ConditionViolation(Vec<&'static str>),
    #[error("invalid representative set: {0}")]
    InvalidRepresentatives(String),
    #[error("no representative set closed under +c exists; obstruction at the orbit of {0}")]
    NoClosedRepresentatives(u64),
    #[error("character inner product is not a nonnegative integer: {0}")]
    NonIntegral(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    SL,
    GL,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::SL => "SL",
            Case::GL => "GL",
        })
    }
}

/// Outcome of checking (M1)–(M7); each flag is computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub m: u64,
    pub r: u64,
    pub s: u64,
    pub t: u64,
    /// gcd(m, r) = 1
    pub m1: bool,
    /// r^s ≡ 1 (mod m)
    pub m2: bool,
    /// (r−1)t ≡ 0 (mod m)
    pub m3: bool,
    /// s prime
    pub m4: bool,
    /// r ≢ 1 (mod m)
    pub m5: bool,
    /// s | m
    pub m6: bool,
    /// s | r−1
    pub m7: bool,
    /// Σ_{k<s} r^k mod m
    pub c: u64,
    pub n: Option<u64>,
    pub b: Option<u64>,
    pub u: u64,
    pub case: Case,
}

impl ConditionReport {
    pub fn flags(&self) -> [(&'static str, bool); 7] {
        [
            ("M1", self.m1),
            ("M2", self.m2),
            ("M3", self.m3),
            ("M4", self.m4),
            ("M5", self.m5),
            ("M6", self.m6),
            ("M7", self.m7),
        ]
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.flags()
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Checks (M1)–(M7) and derives c, n, b, u and the SL/GL case.
///
/// `m`, `r`, `s` must be positive; `t = 0` is allowed.
pub fn check_conditions(m: u64, r: u64, s: u64, t: u64) -> Result<ConditionReport, GroupError> {
    if m == 0 || r == 0 || s == 0 {
        return Err(GroupError::InvalidInput(format!(
            "m, r, s must be positive (got m={m}, r={r}, s={s})"
        )));
    }
    if m > u32::MAX as u64 || s > 64 {
        return Err(GroupError::InvalidInput("parameters out of range".into()));
    }
    let c = (0..s).map(|k| pow_mod(r, k, m)).sum::<u64>() % m;
    let m6 = m % s == 0;
    let m7 = (r - 1) % s == 0;
    let n = m6.then_some(m / s);
    let u = m / c.gcd(&m);
    let sl = c == 0
        && if s == 2 {
            n.is_some_and(|n| t % m == n % m)
        } else {
            t % m == 0
        };
    Ok(ConditionReport {
        m,
        r,
        s,
        t,
        m1: m.gcd(&r) == 1,
        m2: pow_mod(r, s, m) == 1 % m,
        m3: ((r - 1) % m) * (t % m) % m == 0,
        m4: is_prime(s),
        m5: r % m != 1 % m,
        m6,
        m7,
        c,
        n,
        b: m7.then_some((r - 1) / s),
        u,
        case: if sl { Case::SL } else { Case::GL },
    })
}

/// Validated parameters; (M1)–(M5) always hold, (M6)/(M7) are recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetacyclicParams {
    report: ConditionReport,
}

impl MetacyclicParams {
    pub fn new(m: u64, r: u64, s: u64, t: u64) -> Result<Self, GroupError> {
        let report = check_conditions(m, r, s, t)?;
        let missing: Vec<_> = report
            .failures()
            .into_iter()
            .filter(|f| !matches!(*f, "M6" | "M7"))
            .collect();
        if !missing.is_empty() {
            return Err(GroupError::ConditionViolation(missing));
        }
        Ok(MetacyclicParams { report })
    }

    /// M(s, b): r = sb+1, m = Σ_{j<s} r^j, t = m/s for s = 2 and 0 otherwise.
    pub fn family_m(s: u64, b: u64) -> Result<Self, GroupError> {
        let r = s * b + 1;
        let m: u64 = (0..s).map(|j| r.pow(j as u32)).sum();
        Self::new(m, r, s, if s == 2 { m / s } else { 0 })
    }

    /// M̂(s, b), b ≥ 2: as M(s, b) with m multiplied by b.
    pub fn family_m_hat(s: u64, b: u64) -> Result<Self, GroupError> {
        if b < 2 {
            return Err(GroupError::InvalidInput("M̂(s,b) needs b ≥ 2".into()));
        }
        let r = s * b + 1;
        let m: u64 = b * (0..s).map(|j| r.pow(j as u32)).sum::<u64>();
        Self::new(m, r, s, if s == 2 { m / s } else { 0 })
    }

    /// Errors unless (M6) and (M7) also hold.
    pub fn require_all(&self) -> Result<(), GroupError> {
        if self.report.all_hold() {
            Ok(())
        } else {
            Err(GroupError::ConditionViolation(self.report.failures()))
        }
    }

    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    pub fn m(&self) -> u64 {
        self.report.m
    }
    pub fn r(&self) -> u64 {
        self.report.r
    }
    pub fn s(&self) -> u64 {
        self.report.s
    }
    pub fn t(&self) -> u64 {
        self.report.t
    }
    pub fn c(&self) -> u64 {
        self.report.c
    }
    pub fn u(&self) -> u64 {
        self.report.u
    }
    pub fn n(&self) -> Option<u64> {
        self.report.n
    }
    pub fn b(&self) -> Option<u64> {
        self.report.b
    }
    pub fn case(&self) -> Case {
        self.report.case
    }

    /// |G| = s·m, also the working cyclotomic order.
    pub fn order(&self) -> u64 {
        self.s() * self.m()
    }

    /// r^k mod m.
    pub fn r_pow(&self, k: u64) -> u64 {
        pow_mod(self.r(), k, self.m())
    }

    pub fn modm(&self, x: i64) -> u64 {
        x.rem_euclid(self.m() as i64) as u64
    }

    /// Exponent of ε_m^k in ℚ(ζ_M).
    pub fn eps_m(&self, k: i64) -> u64 {
        (k * self.s() as i64).rem_euclid(self.order() as i64) as u64
    }

    /// Exponent of ε_s^k.
    pub fn eps_s(&self, k: i64) -> u64 {
        (k * self.m() as i64).rem_euclid(self.order() as i64) as u64
    }

    /// Exponent of η_i = ζ_{sm}^{t·i}, with i reduced into {0, …, m−1} first.
    pub fn eta(&self, i: u64) -> u64 {
        (self.t() * (i % self.m())) % self.order()
    }

    /// Exponent of λ_{i,ℓ} = η_i ε_s^ℓ.
    pub fn lambda(&self, i: u64, l: u64) -> u64 {
        (self.eta(i) + self.eps_s(l as i64)) % self.order()
    }

    /// Exponent of det V(β) = (−1)^{s−1} ε_m^t.
    pub fn det_beta(&self) -> u64 {
        let sign = if self.s() == 2 { self.order() / 2 } else { 0 };
        (sign + self.eps_m(self.t() as i64)) % self.order()
    }

    /// Exponent of det V(α) = ε_m^c.
    pub fn det_alpha(&self) -> u64 {
        self.eps_m(self.c() as i64)
    }

    pub fn is_fixed(&self, i: u64) -> bool {
        (self.r() * i) % self.m() == i % self.m()
    }

    /// The ⟨r⟩-orbit of i, in the order i, ri, r²i, …, without repeats.
    pub fn orbit(&self, i: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut x = i % self.m();
        for _ in 0..self.s() {
            if !out.contains(&x) {
                out.push(x);
            }
            x = x * self.r() % self.m();
        }
        out
    }
}

impl fmt::Display for MetacyclicParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m(), self.r(), self.s(), self.t())
    }
}

/// {i ∈ ℤ/m : r·i ≡ i}.
pub fn fixed_points(params: &MetacyclicParams) -> Vec<u64> {
    (0..params.m()).filter(|&i| params.is_fixed(i)).collect()
}

/// Orbit representatives D with their fixed points F and the exponents κ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepSystem {
    params: MetacyclicParams,
    fixed: Vec<u64>,
    reps: Vec<u64>,
    ul: Vec<u64>,
    kappa: Vec<u64>,
    closed: bool,
}

impl RepSystem {
    /// Validates a caller-supplied transversal; closure under +c is recorded, not demanded.
    pub fn with_representatives(params: &MetacyclicParams, reps: &[u64]) -> Result<Self, GroupError> {
        params.require_all()?;
        let m = params.m();
        let set: BTreeSet<u64> = reps.iter().copied().collect();
        if let Some(bad) = set.iter().find(|&&i| i >= m) {
            return Err(GroupError::InvalidRepresentatives(format!("{bad} is not in 0..{m}")));
        }
        let mut ul = vec![u64::MAX; m as usize];
        for &d in &set {
            for x in params.orbit(d) {
                if ul[x as usize] != u64::MAX {
                    return Err(GroupError::InvalidRepresentatives(format!(
                        "{d} and {} lie in the same orbit",
                        ul[x as usize]
                    )));
                }
                ul[x as usize] = d;
            }
        }
        if let Some(i) = ul.iter().position(|&x| x == u64::MAX) {
            return Err(GroupError::InvalidRepresentatives(format!(
                "the orbit of {i} has no representative"
            )));
        }
        let kappa = (0..m)
            .map(|i| {
                let u = ul[i as usize];
                if params.is_fixed(i) {
                    0
                } else {
                    (0..params.s())
                        .find(|&k| params.r_pow(k) * u % m == i)
                        .expect("orbit element")
                }
            })
            .collect();
        let c = params.c();
        let closed = set.iter().all(|&d| set.contains(&((d + c) % m)));
        Ok(RepSystem {
            params: params.clone(),
            fixed: fixed_points(params),
            reps: set.into_iter().collect(),
            ul,
            kappa,
            closed,
        })
    }

    pub fn params(&self) -> &MetacyclicParams {
        &self.params
    }

    /// F, ascending.
    pub fn fixed(&self) -> &[u64] {
        &self.fixed
    }

    /// D, ascending.
    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    /// D∖F, ascending.
    pub fn induced(&self) -> Vec<u64> {
        self.reps
            .iter()
            .copied()
            .filter(|&i| !self.params.is_fixed(i))
            .collect()
    }

    /// The representative of the orbit of i.
    pub fn ul(&self, i: u64) -> u64 {
        self.ul[(i % self.params.m()) as usize]
    }

    /// κ_i with r^{κ_i}·ul(i) ≡ i; zero on fixed points.
    pub fn kappa(&self, i: u64) -> u64 {
        self.kappa[(i % self.params.m()) as usize]
    }

    pub fn is_closed_under_c(&self) -> bool {
        self.closed
    }

    /// Errors unless D is closed under +c.
    pub fn require_closed(&self) -> Result<(), GroupError> {
        if self.closed {
            Ok(())
        } else {
            Err(GroupError::InvalidRepresentatives(format!(
                "D is not closed under +{}",
                self.params.c()
            )))
        }
    }
}

/// A transversal D ⊇ F closed under +c, chosen deterministically.
pub fn choose_representatives(params: &MetacyclicParams) -> Result<RepSystem, GroupError> {
    params.require_all()?;
    let m = params.m();
    let c = params.c();
    let orbit_min: Vec<u64> = (0..m)
        .map(|i| *params.orbit(i).iter().min().expect("nonempty orbit"))
        .collect();
    let orbits: Vec<u64> = (0..m).filter(|&i| orbit_min[i as usize] == i).collect();
    if c == 0 {
        return RepSystem::with_representatives(params, &orbits);
    }
    if params.u().gcd(&params.s()) == 1 {
        let mut chosen: Vec<Option<u64>> = vec![None; m as usize];
        for &o in &orbits {
            if chosen[o as usize].is_some() {
                continue;
            }
            let mut x = o;
            while chosen[orbit_min[x as usize] as usize].is_none() {
                chosen[orbit_min[x as usize] as usize] = Some(x);
                x = (x + c) % m;
            }
        }
        let reps: Vec<u64> = chosen.into_iter().flatten().collect();
        let rs = RepSystem::with_representatives(params, &reps)?;
        if rs.closed {
            return Ok(rs);
        }
    }
    let mut chosen: Vec<Option<u64>> = vec![None; m as usize];
    if !assign_orbits(&orbits, 0, &orbit_min, c, m, &mut chosen) {
        let stuck = orbits
            .iter()
            .copied()
            .find(|&o| chosen[o as usize].is_none())
            .unwrap_or(0);
        return Err(GroupError::NoClosedRepresentatives(stuck));
    }
    let reps: Vec<u64> = chosen.into_iter().flatten().collect();
    RepSystem::with_representatives(params, &reps)
}

/// Depth-first search: choosing x forces x + c, x + 2c, … to be chosen as well.
fn assign_orbits(
    orbits: &[u64],
    idx: usize,
    orbit_min: &[u64],
    c: u64,
    m: u64,
    chosen: &mut Vec<Option<u64>>,
) -> bool {
    let Some(&o) = orbits.get(idx) else {
        return true;
    };
    if chosen[o as usize].is_some() {
        return assign_orbits(orbits, idx + 1, orbit_min, c, m, chosen);
    }
    let mut candidates: Vec<u64> = (0..m).filter(|&x| orbit_min[x as usize] == o).collect();
    candidates.sort_unstable();
    for start in candidates {
        let mut assigned = Vec::new();
        let mut x = start;
        let ok = loop {
            let key = orbit_min[x as usize] as usize;
            match chosen[key] {
                None => {
                    chosen[key] = Some(x);
                    assigned.push(key);
                    x = (x + c) % m;
                }
                Some(y) if y == x => break true,
                Some(_) => break false,
            }
        };
        if ok && assign_orbits(orbits, idx + 1, orbit_min, c, m, chosen) {
            return true;
        }
        for key in assigned {
            chosen[key] = None;
        }
    }
    false
}

/// A monomial matrix over ℚ(ζ_M): column k is ζ_M^{phase[k]}·e_{perm[k]}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    order: u64,
    perm: Vec<usize>,
    phase: Vec<u64>,
}

impl MonomialMatrix {
    pub fn new(order: u64, perm: Vec<usize>, phase: Vec<u64>) -> Self {
        assert_eq!(perm.len(), phase.len());
        let mut seen = perm.clone();
        seen.sort_unstable();
        assert!(seen.iter().copied().eq(0..perm.len()), "not a permutation");
        let phase = phase.into_iter().map(|p| p % order).collect();
        MonomialMatrix { order, perm, phase }
    }

    pub fn identity(order: u64, n: usize) -> Self {
        Self::new(order, (0..n).collect(), vec![0; n])
    }

    pub fn diagonal(order: u64, phase: Vec<u64>) -> Self {
        Self::new(order, (0..phase.len()).collect(), phase)
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Image of basis vector k as (row, phase exponent).
    pub fn image(&self, k: usize) -> (usize, u64) {
        (self.perm[k], self.phase[k])
    }

    /// self · other.
    pub fn mul(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let phase = (0..other.dim())
            .map(|k| (other.phase[k] + self.phase[other.perm[k]]) % self.order)
            .collect();
        MonomialMatrix {
            order: self.order,
            perm,
            phase,
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.order, self.dim()), |acc, _| acc.mul(self))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim();
        let perm = self.perm.iter().copied().chain(other.perm.iter().map(|p| p + n)).collect();
        let phase = self.phase.iter().chain(&other.phase).copied().collect();
        MonomialMatrix {
            order: self.order,
            perm,
            phase,
        }
    }

    /// Exponents of the nonzero diagonal entries; the trace is Σ ζ^e.
    pub fn trace_exponents(&self) -> Vec<u64> {
        (0..self.dim())
            .filter(|&k| self.perm[k] == k)
            .map(|k| self.phase[k])
            .collect()
    }

    /// Exponent e with det = ζ_M^e; `None` when the sign is −1 and M is odd.
    pub fn det_exponent(&self) -> Option<u64> {
        let mut seen = vec![false; self.dim()];
        let mut transpositions = 0;
        for k in 0..self.dim() {
            let mut len = 0;
            let mut x = k;
            while !seen[x] {
                seen[x] = true;
                x = self.perm[x];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        let phases = self.phase.iter().sum::<u64>() % self.order;
        if transpositions % 2 == 0 {
            Some(phases)
        } else if self.order % 2 == 0 {
            Some((phases + self.order / 2) % self.order)
        } else {
            None
        }
    }

    pub fn to_matrix(&self) -> CycMatrix {
        let mut out = CycMatrix::zeros(self.order, self.dim(), self.dim());
        for k in 0..self.dim() {
            out.set(self.perm[k], k, CycNum::root_of_unity(self.order, self.phase[k] as i64));
        }
        out
    }
}

/// A representation given by monomial images of α and β.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRep {
    pub alpha: MonomialMatrix,
    pub beta: MonomialMatrix,
}

impl MonomialRep {
    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        MonomialRep {
            alpha: self.alpha.direct_sum(&other.alpha),
            beta: self.beta.direct_sum(&other.beta),
        }
    }

    /// ρ(α^a β^b).
    pub fn element(&self, a: u64, b: u64) -> MonomialMatrix {
        self.alpha.pow(a).mul(&self.beta.pow(b))
    }

    /// Checks α^m = 1, β⁻¹αβ = α^r and β^s = α^t.
    pub fn satisfies_presentation(&self, params: &MetacyclicParams) -> bool {
        let n = self.dim();
        let id = MonomialMatrix::identity(self.alpha.order, n);
        let a = &self.alpha;
        let b = &self.beta;
        a.pow(params.m()) == id
            && a.mul(b) == b.mul(&a.pow(params.r()))
            && b.pow(params.s()) == a.pow(params.t())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IrrepKind {
    /// T_i for i ∈ D∖F; basis β^k v_i, k = 0..s−1.
    Induced(u64),
    /// T_i^{(ℓ)} for i ∈ F; basis w_i^{(ℓ)}.
    Split(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irrep {
    pub kind: IrrepKind,
    pub rep: MonomialRep,
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn alpha_matrix(&self) -> CycMatrix {
        self.rep.alpha.to_matrix()
    }

    pub fn beta_matrix(&self) -> CycMatrix {
        self.rep.beta.to_matrix()
    }
}

/// T_i on the basis β^k v_i: α ↦ diag(ε_m^{r^k i}), β shifts with β^s v_i = ε_m^{ti} v_i.
pub fn induced_rep(params: &MetacyclicParams, i: u64) -> MonomialRep {
    let s = params.s() as usize;
    let order = params.order();
    let alpha = MonomialMatrix::diagonal(
        order,
        (0..s as u64)
            .map(|k| params.eps_m((params.r_pow(k) * i % params.m()) as i64))
            .collect(),
    );
    let mut phase = vec![0; s];
    phase[s - 1] = params.eps_m((params.t() * (i % params.m())) as i64);
    let beta = MonomialMatrix::new(order, (0..s).map(|k| (k + 1) % s).collect(), phase);
    MonomialRep { alpha, beta }
}

/// T_i^{(ℓ)}: α ↦ ε_m^i, β ↦ λ_{i,ℓ}.
pub fn split_rep(params: &MetacyclicParams, i: u64, l: u64) -> MonomialRep {
    let order = params.order();
    MonomialRep {
        alpha: MonomialMatrix::diagonal(order, vec![params.eps_m(i as i64)]),
        beta: MonomialMatrix::diagonal(order, vec![params.lambda(i, l)]),
    }
}

/// The one-dimensional representation det_V⁻¹.
pub fn inverse_determinant(params: &MetacyclicParams) -> MonomialRep {
    let order = params.order();
    MonomialRep {
        alpha: MonomialMatrix::diagonal(order, vec![order - params.det_alpha() % order]),
        beta: MonomialMatrix::diagonal(order, vec![(order - params.det_beta()) % order]),
    }
}

/// V = T_1, or V ⊕ det_V⁻¹ ⊂ SL(s+1) when `embedded`.
pub fn defining_rep(params: &MetacyclicParams, embedded: bool) -> MonomialRep {
    let v = induced_rep(params, 1);
    if embedded {
        v.direct_sum(&inverse_determinant(params))
    } else {
        v
    }
}

/// Generator matrices of the defining representation.
pub fn generator_matrices(params: &MetacyclicParams, embedded: bool) -> (CycMatrix, CycMatrix) {
    let v = defining_rep(params, embedded);
    (v.alpha.to_matrix(), v.beta.to_matrix())
}

/// Irreducible representations: split ones for F ascending (ℓ ascending), then induced ones for D∖F.
///
/// The irreducibles of the embedded group coincide with these.
pub fn irreps(reps: &RepSystem) -> Vec<Irrep> {
    let p = reps.params();
    let split = reps.fixed().iter().flat_map(|&i| {
        (0..p.s()).map(move |l| Irrep {
            kind: IrrepKind::Split(i, l),
            rep: split_rep(p, i, l),
        })
    });
    let induced = reps.induced().into_iter().map(|i| Irrep {
        kind: IrrepKind::Induced(i),
        rep: induced_rep(p, i),
    });
    split.collect::<Vec<_>>().into_iter().chain(induced).collect()
}

/// Size of the group generated by `gens`, by breadth-first closure; `None` past `limit`.
pub fn group_order(gens: &[MonomialMatrix], limit: usize) -> Option<usize> {
    let first = gens.first()?;
    let id = MonomialMatrix::identity(first.order(), first.dim());
    let mut seen: HashSet<MonomialMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.mul(h);
            if seen.insert(gh.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(gh);
            }
        }
    }
    Some(seen.len())
}

/// Characters as root-exponent multisets, indexed by a·s + b for g = α^a β^b.
pub fn character_table_row(params: &MetacyclicParams, rep: &MonomialRep) -> Vec<Vec<u64>> {
    let betas: Vec<MonomialMatrix> = (0..params.s()).map(|b| rep.beta.pow(b)).collect();
    let mut alpha_pow = MonomialMatrix::identity(params.order(), rep.dim());
    let mut out = Vec::with_capacity(params.order() as usize);
    for _ in 0..params.m() {
        for bp in &betas {
            out.push(alpha_pow.mul(bp).trace_exponents());
        }
        alpha_pow = alpha_pow.mul(&rep.alpha);
    }
    out
}

/// (1/|G|) Σ_g conj χ_S(g) · χ_W(g) · χ_T(g), from precomputed character rows.
pub fn inner_product_from_rows(
    params: &MetacyclicParams,
    chi_s: &[Vec<u64>],
    chi_w: &[Vec<u64>],
    chi_t: &[Vec<u64>],
) -> Result<u64, GroupError> {
    let order = params.order();
    let mut acc = RootCounter::new(order);
    for g in 0..order as usize {
        for &e1 in &chi_s[g] {
            for &e2 in &chi_w[g] {
                for &e3 in &chi_t[g] {
                    acc.bump(order - e1 + e2 + e3, 1);
                }
            }
        }
    }
    let total = acc.to_cyc();
    let value = total
        .to_rational()
        .map(|q| q / Rational::from_integer(order.into()))
        .filter(|q| q.is_integer() && *q >= Rational::from_integer(0.into()))
        .ok_or_else(|| GroupError::NonIntegral(total.to_string()))?;
    Ok(u64::try_from(value.to_integer()).expect("small multiplicity"))
}

/// dim Hom_G(S, W ⊗ T) by the character formula over all s·m group elements.
pub fn character_inner_product(
    params: &MetacyclicParams,
    s_rep: &MonomialRep,
    t_rep: &MonomialRep,
    w_rep: &MonomialRep,
) -> Result<u64, GroupError> {
    inner_product_from_rows(
        params,
        &character_table_row(params, s_rep),
        &character_table_row(params, w_rep),
        &character_table_row(params, t_rep),
    )
}

/// The trivial representation.
pub fn trivial_rep(params: &MetacyclicParams) -> MonomialRep {
    MonomialRep {
        alpha: MonomialMatrix::identity(params.order(), 1),
        beta: MonomialMatrix::identity(params.order(), 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m21() -> MetacyclicParams {
        MetacyclicParams::new(21, 4, 3, 0).unwrap()
    }

    #[test]
    fn worked_parameter_reports() {
        let r = check_conditions(21, 4, 3, 0).unwrap();
        assert!(r.all_hold());
        assert_eq!((r.c, r.n, r.b, r.case), (0, Some(7), Some(1), Case::SL));

        let r = check_conditions(12, 5, 2, 6).unwrap();
        assert!(r.all_hold());
        assert_eq!((r.c, r.u, r.case), (6, 2, Case::GL));

        let r = check_conditions(7, 2, 3, 0).unwrap();
        assert_eq!(r.failures(), vec!["M6", "M7"]);
        assert!(check_conditions(0, 1, 1, 1).is_err());
    }

    #[test]
    fn families() {
        let p = MetacyclicParams::family_m(2, 1).unwrap();
        assert_eq!((p.m(), p.r(), p.s(), p.t()), (4, 3, 2, 2));
        let p = MetacyclicParams::family_m(3, 1).unwrap();
        assert_eq!((p.m(), p.r(), p.s(), p.t()), (21, 4, 3, 0));
        let p = MetacyclicParams::family_m_hat(2, 2).unwrap();
        assert_eq!((p.m(), p.r(), p.s(), p.t(), p.case()), (12, 5, 2, 6, Case::GL));
        let p = MetacyclicParams::family_m_hat(3, 2).unwrap();
        assert_eq!((p.m(), p.r(), p.s(), p.t(), p.case()), (114, 7, 3, 0, Case::GL));
        for b in 1..4 {
            assert_eq!(MetacyclicParams::family_m(2, b).unwrap().case(), Case::SL);
        }
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_points(&m21()), vec![0, 7, 14]);
        let p = MetacyclicParams::new(12, 5, 2, 6).unwrap();
        assert_eq!(fixed_points(&p), vec![0, 3, 6, 9]);
        let p = MetacyclicParams::new(7, 2, 3, 0).unwrap();
        assert_eq!(fixed_points(&p), vec![0]);
    }

    #[test]
    fn kappa_examples() {
        let rs = RepSystem::with_representatives(&m21(), &[0, 4, 7, 8, 9, 12, 13, 14, 17]).unwrap();
        assert_eq!((rs.kappa(1), rs.kappa(4), rs.kappa(16)), (2, 0, 1));
        assert_eq!((rs.ul(1), rs.ul(16)), (4, 4));
        assert!(rs.is_closed_under_c());
    }

    #[test]
    fn binary_dihedral_representatives_exist() {
        let p = MetacyclicParams::new(12, 5, 2, 6).unwrap();
        assert_eq!(p.u().gcd(&p.s()), 2);
        let rs = choose_representatives(&p).unwrap();
        assert!(rs.is_closed_under_c());
        assert_eq!(rs.reps(), &[0, 1, 2, 3, 6, 7, 8, 9]);
    }

    #[test]
    fn overlapping_representatives_rejected() {
        assert!(RepSystem::with_representatives(&m21(), &[0, 1, 4]).is_err());
    }

    #[test]
    fn generator_matrices_m21_small() {
        let p = MetacyclicParams::new(4, 3, 2, 2).unwrap();
        let (a, b) = generator_matrices(&p, false);
        let i = CycNum::root_of_unity(8, 2);
        assert_eq!(a.get(0, 0), &i);
        assert_eq!(a.get(1, 1), &-&i);
        assert_eq!(b.get(0, 1), &CycNum::from_integer(8, -1));
        assert_eq!(b.get(1, 0), &CycNum::one(8));
    }

    #[test]
    fn embedded_corner_is_inverse_determinant() {
        let p = MetacyclicParams::new(12, 5, 2, 6).unwrap();
        let (a, _) = generator_matrices(&p, true);
        assert_eq!(a.get(2, 2), &CycNum::from_integer(24, -1));
    }

    #[test]
    fn irreps_of_m21() {
        let rs = choose_representatives(&m21()).unwrap();
        let irr = irreps(&rs);
        assert_eq!(irr.iter().filter(|x| x.dim() == 3).count(), 6);
        assert_eq!(irr.iter().filter(|x| x.dim() == 1).count(), 9);
        for x in &irr {
            assert!(x.rep.satisfies_presentation(rs.params()));
        }
    }

    #[test]
    fn generated_group_has_order_sm() {
        for (m, r, s, t) in [(4, 3, 2, 2), (21, 4, 3, 0), (12, 5, 2, 6)] {
            let p = MetacyclicParams::new(m, r, s, t).unwrap();
            for emb in [false, true] {
                let v = defining_rep(&p, emb);
                assert_eq!(group_order(&[v.alpha, v.beta], 1000), Some((s * m) as usize));
            }
        }
    }

    #[test]
    fn schur_orthogonality() {
        let rs = choose_representatives(&m21()).unwrap();
        let irr = irreps(&rs);
        let one = trivial_rep(rs.params());
        for a in &irr {
            for b in &irr {
                let d = character_inner_product(rs.params(), &a.rep, &b.rep, &one).unwrap();
                assert_eq!(d, u64::from(a == b));
            }
        }
    }

    #[test]
    fn determinant_of_defining_rep() {
        for (m, r, s, t) in [(21, 4, 3, 0), (12, 5, 2, 6), (4, 3, 2, 2)] {
            let p = MetacyclicParams::new(m, r, s, t).unwrap();
            let v = defining_rep(&p, false);
            assert_eq!(v.alpha.det_exponent(), Some(p.det_alpha()));
            assert_eq!(v.beta.det_exponent(), Some(p.det_beta()));
            let w = defining_rep(&p, true);
            assert_eq!(w.alpha.det_exponent(), Some(0));
            assert_eq!(w.beta.det_exponent(), Some(0));
        }
    }
}
