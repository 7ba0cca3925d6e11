//! Locally effective models of Eilenberg-MacLane spaces and their path
//! spaces, via normalized cochains on standard simplices:
//! `K(π,n)_q = Z^n(Δ^q;π)` and `E(π,n)_q = C^n(Δ^q;π)`, with the
//! coboundary δ: E(π,n) → K(π,n+1) as the fibration.
//!
//! Also the cochain-level cup and cup-1 products used to express
//! k-invariants, and the linear solver that lifts a cocycle through δ on
//! a single simplex with prescribed faces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::intlinalg::{solve_linear, IntMatrix};
use crate::simplicial::Simplex;

/// An injective monotone face of a standard simplex: its increasing
/// vertex list.
pub type FaceKey = Vec<u8>;

/// All increasing (len)-element subsets of {0, …, top}.
pub fn face_keys(top: usize, len: usize) -> Vec<FaceKey> {
    let mut out = Vec::new();
    let mut cur: FaceKey = Vec::with_capacity(len);
    fn rec(out: &mut Vec<FaceKey>, cur: &mut FaceKey, next: usize, top: usize, len: usize) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let remaining = len - cur.len();
        for v in next..=(top + 1 - remaining) {
            cur.push(v as u8);
            rec(out, cur, v + 1, top, len);
            cur.pop();
        }
    }
    if len <= top + 1 && len > 0 {
        rec(&mut out, &mut cur, 0, top, len);
    } else if len == 0 {
        out.push(Vec::new());
    }
    out
}

/// A normalized π-valued n-cochain on Δ^level: a level-q simplex of
/// `E(π,n)` (and of `K(π,n)` when it is a cocycle). Stored sparsely; all
/// coordinates are kept canonical in π.
#[derive(Clone)]
pub struct EmSimplex {
    level: usize,
    degree: usize,
    coeffs: FgAbelianGroup,
    values: BTreeMap<FaceKey, Vec<BigInt>>,
}

impl PartialEq for EmSimplex {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.coeffs == other.coeffs, "comparing cochains over different groups");
        self.level == other.level && self.degree == other.degree && self.values == other.values
    }
}
impl Eq for EmSimplex {}

impl PartialOrd for EmSimplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for EmSimplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.level, self.degree)
            .cmp(&(other.level, other.degree))
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl std::fmt::Debug for EmSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EmSimplex(q={}, n={}, {{", self.level, self.degree)?;
        for (k, v) in &self.values {
            let vs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            write!(f, "{k:?}: ({}), ", vs.join(","))?;
        }
        write!(f, "}})")
    }
}

impl EmSimplex {
    pub fn zero(level: usize, degree: usize, coeffs: FgAbelianGroup) -> Self {
        EmSimplex { level, degree, coeffs, values: BTreeMap::new() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &FgAbelianGroup {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&FaceKey, &Vec<BigInt>)> {
        self.values.iter()
    }

    pub fn value(&self, key: &[u8]) -> Vec<BigInt> {
        debug_assert_eq!(key.len(), self.degree + 1, "key arity mismatch");
        self.values
            .get(key)
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.coeffs.n_gens()])
    }

    pub fn set(&mut self, key: FaceKey, coords: Vec<BigInt>) {
        debug_assert_eq!(key.len(), self.degree + 1);
        debug_assert!(key.iter().all(|&v| (v as usize) <= self.level));
        let canon = self.coeffs.canonical_coords(&coords);
        if canon.iter().all(|c| c.is_zero()) {
            self.values.remove(&key);
        } else {
            self.values.insert(key, canon);
        }
    }

    /// The value on the full face [0, …, level]; only defined when the
    /// degree equals the level.
    pub fn top_value(&self) -> Vec<BigInt> {
        assert_eq!(self.degree, self.level, "top value needs degree == level");
        let key: FaceKey = (0..=self.level as u8).collect();
        self.value(&key)
    }

    pub fn add(&self, other: &EmSimplex) -> Result<EmSimplex> {
        if self.level != other.level || self.degree != other.degree || self.coeffs != other.coeffs
        {
            return Err(Error::Usage("cochain shape mismatch in addition".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.values {
            let mut cur = out.value(k);
            for (c, d) in cur.iter_mut().zip(v) {
                *c += d;
            }
            out.set(k.clone(), cur);
        }
        Ok(out)
    }

    pub fn neg(&self) -> EmSimplex {
        let mut out = EmSimplex::zero(self.level, self.degree, self.coeffs.clone());
        for (k, v) in &self.values {
            out.set(k.clone(), v.iter().map(|c| -c).collect());
        }
        out
    }

    pub fn sub(&self, other: &EmSimplex) -> Result<EmSimplex> {
        self.add(&other.neg())
    }

    /// Pullback along a monotone vertex map [new_level] → [level]: the
    /// image values on faces that stay injective, zero (normalization)
    /// on the rest.
    pub fn pullback(&self, vertex_map: &[u8]) -> EmSimplex {
        let new_level = vertex_map.len() - 1;
        debug_assert!(vertex_map.iter().all(|&v| (v as usize) <= self.level));
        let mut out = EmSimplex::zero(new_level, self.degree, self.coeffs.clone());
        for key in face_keys(new_level, self.degree + 1) {
            let mapped: FaceKey = key.iter().map(|&v| vertex_map[v as usize]).collect();
            if mapped.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            if let Some(v) = self.values.get(&mapped) {
                out.set(key, v.clone());
            }
        }
        out
    }

    /// Face operator: pullback along the i-th coface.
    pub fn face(&self, i: usize) -> EmSimplex {
        assert!(self.level >= 1 && i <= self.level);
        let map: Vec<u8> =
            (0..self.level as u8).map(|v| if (v as usize) < i { v } else { v + 1 }).collect();
        self.pullback(&map)
    }

    /// Degeneracy operator: pullback along the i-th codegeneracy.
    pub fn degeneracy(&self, i: usize) -> EmSimplex {
        assert!(i <= self.level);
        let map: Vec<u8> = (0..=(self.level + 1) as u8)
            .map(|v| if (v as usize) <= i { v } else { v - 1 })
            .collect();
        self.pullback(&map)
    }

    /// Simplicial coboundary: the δ of the (MPT) squares,
    /// E(π,n) → K(π,n+1) levelwise.
    pub fn coboundary(&self) -> EmSimplex {
        let mut out = EmSimplex::zero(self.level, self.degree + 1, self.coeffs.clone());
        for key in face_keys(self.level, self.degree + 2) {
            let mut acc = vec![BigInt::zero(); self.coeffs.n_gens()];
            let mut nonzero = false;
            for j in 0..key.len() {
                let mut sub: FaceKey = key.clone();
                sub.remove(j);
                if let Some(v) = self.values.get(&sub) {
                    nonzero = true;
                    if j % 2 == 0 {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a += b;
                        }
                    } else {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a -= b;
                        }
                    }
                }
            }
            if nonzero {
                out.set(key, acc);
            }
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Applies a coefficient hom π → π' to every value.
    pub fn map_coeffs(&self, hom: &crate::abelian::GroupHom) -> Result<EmSimplex> {
        if *hom.source() != self.coeffs {
            return Err(Error::Usage("coefficient hom has the wrong source".into()));
        }
        let mut out = EmSimplex::zero(self.level, self.degree, hom.target().clone());
        for (k, v) in &self.values {
            out.set(k.clone(), hom.matrix().mul_vec(v));
        }
        Ok(out)
    }
}

/// Is the coefficient group usable as a ring for cup products: ℤ or ℤ/k
/// on a single generator.
fn ring_like(coeffs: &FgAbelianGroup) -> bool {
    coeffs.n_gens() == 1
}

/// Alexander-Whitney cup product of cochains on the same simplex:
/// (u ⌣ v)(φ) = u(front) · v(back).
pub fn cup_product(u: &EmSimplex, v: &EmSimplex) -> Result<EmSimplex> {
    if u.level != v.level {
        return Err(Error::Usage("cup product needs a common level".into()));
    }
    if u.coeffs != v.coeffs || !ring_like(&u.coeffs) {
        return Err(Error::Usage("cup product needs matching cyclic coefficients".into()));
    }
    let (p, q) = (u.degree, v.degree);
    let mut out = EmSimplex::zero(u.level, p + q, u.coeffs.clone());
    for key in face_keys(u.level, p + q + 1) {
        let front: FaceKey = key[..=p].to_vec();
        let back: FaceKey = key[p..].to_vec();
        let (Some(a), Some(b)) = (u.values.get(&front), v.values.get(&back)) else {
            continue;
        };
        out.set(key, vec![&a[0] * &b[0]]);
    }
    Ok(out)
}

/// Sign of Steenrod's original cup-1 summand, pinned in exactly one
/// place: (-1)^{(p-i)(q+1)} for the i-th term of a product of cochains
/// of degrees p and q.
pub fn cup_one_sign(p: usize, i: usize, q: usize) -> i64 {
    if ((p - i) * (q + 1)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Steenrod's cup-1 product:
/// (u ⌣₁ v)(φ) = Σᵢ ± u(φ[0..=i] ∪ φ[i+q..]) · v(φ[i..=i+q]).
pub fn cup_one(u: &EmSimplex, v: &EmSimplex) -> Result<EmSimplex> {
    if u.level != v.level {
        return Err(Error::Usage("cup-1 product needs a common level".into()));
    }
    if u.coeffs != v.coeffs || !ring_like(&u.coeffs) {
        return Err(Error::Usage("cup-1 product needs matching cyclic coefficients".into()));
    }
    let (p, q) = (u.degree, v.degree);
    if p + q == 0 {
        return Err(Error::Usage("cup-1 of two 0-cochains is not defined".into()));
    }
    let mut out = EmSimplex::zero(u.level, p + q - 1, u.coeffs.clone());
    for key in face_keys(u.level, p + q) {
        let mut acc = BigInt::zero();
        for i in 0..p {
            // u sees vertices 0..=i and i+q.. of the key; v the middle run.
            let mut ukey: FaceKey = key[..=i].to_vec();
            ukey.extend_from_slice(&key[i + q..]);
            let vkey: FaceKey = key[i..=i + q].to_vec();
            let (Some(a), Some(b)) = (u.values.get(&ukey), v.values.get(&vkey)) else {
                continue;
            };
            let term = &a[0] * &b[0];
            if cup_one_sign(p, i, q) > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if !acc.is_zero() {
            out.set(key, vec![acc]);
        }
    }
    Ok(out)
}

/// Finds `c ∈ C^(degree)(Δ^level; π)` with `δc = z` and the prescribed
/// values on the given faces, `degree = z.degree - 1`. Prefers the
/// all-zero completion when it works. `None` when the linear system is
/// infeasible; inconsistent duplicate prescriptions are rejected.
pub fn lift_through_delta_on_simplex(
    z: &EmSimplex,
    constraints: &[(FaceKey, Vec<BigInt>)],
) -> Result<Option<EmSimplex>> {
    let level = z.level;
    let degree = z
        .degree
        .checked_sub(1)
        .ok_or_else(|| Error::Usage("cannot lift a 0-cocycle through the coboundary".into()))?;
    let pi = z.coeffs.clone();
    let g = pi.n_gens();
    let mut prescribed: BTreeMap<FaceKey, Vec<BigInt>> = BTreeMap::new();
    for (k, v) in constraints {
        if k.len() != degree + 1 {
            return Err(Error::Usage("constraint key has the wrong arity".into()));
        }
        let canon = pi.canonical_coords(v);
        if let Some(old) = prescribed.get(k) {
            if *old != canon {
                return Err(Error::Usage("incompatible face constraints".into()));
            }
        }
        prescribed.insert(k.clone(), canon);
    }
    // Candidate: prescribed values, zero elsewhere. Preferred when valid.
    let mut candidate = EmSimplex::zero(level, degree, pi.clone());
    for (k, v) in &prescribed {
        candidate.set(k.clone(), v.clone());
    }
    let defect = z.sub(&candidate.coboundary())?;
    if defect.is_zero() {
        return Ok(Some(candidate));
    }

    let unknown_keys: Vec<FaceKey> = face_keys(level, degree + 1)
        .into_iter()
        .filter(|k| !prescribed.contains_key(k))
        .collect();
    if unknown_keys.is_empty() {
        return Ok(None);
    }
    let eq_keys: Vec<FaceKey> = face_keys(level, degree + 2);
    let key_pos: BTreeMap<&FaceKey, usize> =
        unknown_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let n_rels = pi.relations().cols();
    let rows = eq_keys.len() * g;
    let cols = unknown_keys.len() * g + eq_keys.len() * n_rels;
    let mut system = IntMatrix::zero(rows, cols);
    let mut rhs = vec![BigInt::zero(); rows];
    for (ei, ekey) in eq_keys.iter().enumerate() {
        // δc(ekey) = Σ_j (-1)^j c(ekey \ j) must equal defect(ekey),
        // where c is the unknown correction (zero on prescribed faces).
        for j in 0..ekey.len() {
            let mut sub = ekey.clone();
            sub.remove(j);
            let Some(&col) = key_pos.get(&sub) else { continue };
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for t in 0..g {
                system[(ei * g + t, col * g + t)] += BigInt::from(sign);
            }
        }
        // Relation slack: equations hold modulo π's relations.
        for rj in 0..n_rels {
            for t in 0..g {
                system[(ei * g + t, unknown_keys.len() * g + ei * n_rels + rj)] =
                    pi.relations()[(t, rj)].clone();
            }
        }
        let dv = defect.value(ekey);
        for t in 0..g {
            rhs[ei * g + t] = dv[t].clone();
        }
    }
    let Some(sol) = solve_linear(&system, &rhs)? else {
        return Ok(None);
    };
    let mut out = candidate;
    for (ki, key) in unknown_keys.iter().enumerate() {
        let coords: Vec<BigInt> = (0..g).map(|t| sol.particular[ki * g + t].clone()).collect();
        out.set(key.clone(), coords);
    }
    debug_assert!(out.coboundary().sub(z).unwrap().is_zero());
    Ok(Some(out))
}

/// Enumerates all of C^degree(Δ^level; π) for finite π (test support and
/// the minimal-model cardinality invariants).
pub fn enumerate_cochains(level: usize, degree: usize, pi: &FgAbelianGroup) -> Vec<EmSimplex> {
    let keys = face_keys(level, degree + 1);
    let elements = pi.enumerate().expect("enumerate_cochains needs finite coefficients");
    let mut out = vec![EmSimplex::zero(level, degree, pi.clone())];
    for key in keys {
        let mut next = Vec::with_capacity(out.len() * elements.len());
        for base in &out {
            for e in &elements {
                let mut c = base.clone();
                c.set(key.clone(), e.coords().to_vec());
                next.push(c);
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------
// Locally effective simplicial interfaces
// ---------------------------------------------------------------------

/// An opaque simplex of a locally effective simplicial set. The nesting
/// mirrors how spaces are built: stage simplices are pairs, fibered
/// powers are tuples, prisms pair a finite cell with a tuple.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SimValue {
    Cell(Simplex),
    Em(EmSimplex),
    Pair(Box<SimValue>, Box<SimValue>),
    Tuple(Vec<SimValue>),
}

impl SimValue {
    pub fn pair(a: SimValue, b: SimValue) -> SimValue {
        SimValue::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_cell(&self) -> &Simplex {
        match self {
            SimValue::Cell(s) => s,
            _ => panic!("expected a finite cell value"),
        }
    }

    pub fn as_em(&self) -> &EmSimplex {
        match self {
            SimValue::Em(c) => c,
            _ => panic!("expected a cochain value"),
        }
    }

    pub fn as_pair(&self) -> (&SimValue, &SimValue) {
        match self {
            SimValue::Pair(a, b) => (a, b),
            _ => panic!("expected a pair value"),
        }
    }

    pub fn as_tuple(&self) -> &[SimValue] {
        match self {
            SimValue::Tuple(t) => t,
            _ => panic!("expected a tuple value"),
        }
    }
}

/// A possibly infinite simplicial set exposed only through evaluators.
pub trait LocallyEffective {
    fn face(&self, v: &SimValue, dim: usize, i: usize) -> SimValue;
    fn degeneracy(&self, v: &SimValue, dim: usize, i: usize) -> SimValue;
    /// Membership validation for externally assembled values.
    fn contains(&self, v: &SimValue, dim: usize) -> bool;
}

/// Is `v` in the image of the i-th degeneracy? Standard test via
/// s_i(d_i(v)) == v.
pub fn degenerate_along(le: &dyn LocallyEffective, v: &SimValue, dim: usize, i: usize) -> bool {
    if dim == 0 {
        return false;
    }
    let stripped = le.face(v, dim, i);
    le.degeneracy(&stripped, dim - 1, i) == *v
}

/// Canonical decomposition `v = s_word(core)` with a nondegenerate core.
pub fn strip_value(
    le: &dyn LocallyEffective,
    v: &SimValue,
    dim: usize,
) -> (Vec<usize>, SimValue, usize) {
    let mut cur = v.clone();
    let mut cur_dim = dim;
    let mut strip_order = Vec::new();
    'outer: loop {
        if cur_dim == 0 {
            break;
        }
        for i in (0..cur_dim).rev() {
            if degenerate_along(le, &cur, cur_dim, i) {
                cur = le.face(&cur, cur_dim, i);
                cur_dim -= 1;
                strip_order.push(i);
                continue 'outer;
            }
        }
        break;
    }
    let mut word: Vec<usize> = Vec::new();
    for &j in strip_order.iter().rev() {
        // Same normalization as for finite degeneracy words.
        let mut pos = 0;
        let mut c = j;
        while pos < word.len() && c <= word[pos] {
            word[pos] += 1;
            pos += 1;
        }
        word.insert(pos, c);
    }
    (word, cur, cur_dim)
}

/// Re-applies a degeneracy word to a value.
pub fn apply_word(le: &dyn LocallyEffective, v: &SimValue, core_dim: usize, word: &[usize]) -> SimValue {
    let mut cur = v.clone();
    let mut dim = core_dim;
    for &i in word.iter().rev() {
        cur = le.degeneracy(&cur, dim, i);
        dim += 1;
    }
    cur
}

/// A finite simplicial set exposed through the locally effective
/// interface.
pub struct FiniteLe(pub crate::simplicial::SsRef);

impl LocallyEffective for FiniteLe {
    fn face(&self, v: &SimValue, _dim: usize, i: usize) -> SimValue {
        SimValue::Cell(self.0.face(v.as_cell(), i))
    }

    fn degeneracy(&self, v: &SimValue, _dim: usize, i: usize) -> SimValue {
        SimValue::Cell(self.0.degeneracy(v.as_cell(), i))
    }

    fn contains(&self, v: &SimValue, dim: usize) -> bool {
        let s = v.as_cell();
        s.dim() == dim && s.nd_dim <= self.0.dim() && s.idx < self.0.cell_count(s.nd_dim)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EmKind {
    /// K(π, n): cocycles.
    K,
    /// E(π, n): all cochains.
    E,
}

/// The standard minimal model of K(π,n) or E(π,n) as a locally effective
/// set.
pub struct EmSpace {
    pub kind: EmKind,
    pub degree: usize,
    pub coeffs: FgAbelianGroup,
}

impl EmSpace {
    pub fn new(kind: EmKind, degree: usize, coeffs: FgAbelianGroup) -> Self {
        EmSpace { kind, degree, coeffs }
    }

    /// All level-q simplices for finite π.
    pub fn enumerate_level(&self, q: usize) -> Vec<EmSimplex> {
        enumerate_cochains(q, self.degree, &self.coeffs)
            .into_iter()
            .filter(|c| match self.kind {
                EmKind::K => c.is_cocycle(),
                EmKind::E => true,
            })
            .collect()
    }
}

impl LocallyEffective for EmSpace {
    fn face(&self, v: &SimValue, _dim: usize, i: usize) -> SimValue {
        SimValue::Em(v.as_em().face(i))
    }

    fn degeneracy(&self, v: &SimValue, _dim: usize, i: usize) -> SimValue {
        SimValue::Em(v.as_em().degeneracy(i))
    }

    fn contains(&self, v: &SimValue, dim: usize) -> bool {
        let c = v.as_em();
        c.level() == dim
            && c.degree() == self.degree
            && c.coeffs() == &self.coeffs
            && match self.kind {
                EmKind::K => c.is_cocycle(),
                EmKind::E => true,
            }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    fn z2() -> FgAbelianGroup {
        FgAbelianGroup::cyclic(2)
    }

    fn random_cochain(
        rng: &mut ChaCha8Rng,
        level: usize,
        degree: usize,
        pi: &FgAbelianGroup,
    ) -> EmSimplex {
        let mut c = EmSimplex::zero(level, degree, pi.clone());
        for key in face_keys(level, degree + 1) {
            let coords: Vec<BigInt> =
                (0..pi.n_gens()).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect();
            c.set(key, coords);
        }
        c
    }

    #[test]
    fn face_of_zero_is_zero() {
        let c = EmSimplex::zero(3, 1, z());
        assert!(c.face(1).is_zero());
        assert!(c.degeneracy(0).is_zero());
    }

    #[test]
    fn faces_of_edge_cochain() {
        // K(ℤ/2, 1): the 1-simplex with value 1 on the edge of Δ¹ has
        // both faces equal to the basepoint 0-simplex.
        let mut c = EmSimplex::zero(1, 1, z2());
        c.set(vec![0, 1], vec![BigInt::from(1)]);
        assert!(c.is_cocycle());
        assert!(c.face(0).is_zero());
        assert!(c.face(1).is_zero());
    }

    #[test]
    fn degeneracy_then_face_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let c = random_cochain(&mut rng, 3, 2, &z());
            for i in 0..=3 {
                let s = c.degeneracy(i);
                assert_eq!(s.face(i), c, "d_i s_i = id");
                assert_eq!(s.face(i + 1), c, "d_(i+1) s_i = id");
            }
        }
    }

    #[test]
    fn simplicial_identities_spot_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let c = random_cochain(&mut rng, 4, 2, &z2());
            for j in 1..=4usize {
                for i in 0..j {
                    assert_eq!(c.face(j).face(i), c.face(i).face(j - 1));
                }
            }
        }
    }

    #[test]
    fn coboundary_formula_on_interval() {
        // 0-cochain (a, b) on Δ¹ has coboundary b - a on the edge.
        let mut c = EmSimplex::zero(1, 0, z());
        c.set(vec![0], vec![BigInt::from(3)]);
        c.set(vec![1], vec![BigInt::from(8)]);
        let d = c.coboundary();
        assert_eq!(d.value(&[0, 1]), vec![BigInt::from(5)]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c = random_cochain(&mut rng, 5, 1, &z());
            assert!(c.coboundary().coboundary().is_zero());
        }
    }

    #[test]
    fn addition_commutes_with_faces() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let a = random_cochain(&mut rng, 3, 1, &z2());
            let b = random_cochain(&mut rng, 3, 1, &z2());
            let s = a.add(&b).unwrap();
            assert_eq!(s.add(&s.neg()).unwrap(), EmSimplex::zero(3, 1, z2()));
            for i in 0..=3 {
                assert_eq!(s.face(i), a.face(i).add(&b.face(i)).unwrap());
            }
        }
    }

    #[test]
    fn minimal_model_cardinalities() {
        // K(π, n) has exactly one q-simplex for q < n.
        let k = EmSpace::new(EmKind::K, 2, z2());
        assert_eq!(k.enumerate_level(0).len(), 1);
        assert_eq!(k.enumerate_level(1).len(), 1);
        // |K(ℤ/2, 1)_q| = 2^q.
        let k1 = EmSpace::new(EmKind::K, 1, z2());
        for q in 0..=4 {
            assert_eq!(k1.enumerate_level(q).len(), 1 << q, "level {q}");
        }
    }

    #[test]
    fn delta_surjects_onto_cocycles() {
        // Every cocycle of K(ℤ/2, 2) at low levels lifts through δ.
        let k = EmSpace::new(EmKind::K, 2, z2());
        for q in 0..=3 {
            for zc in k.enumerate_level(q) {
                let lift = lift_through_delta_on_simplex(&zc, &[]).unwrap();
                let c = lift.unwrap_or_else(|| panic!("cocycle failed to lift at level {q}"));
                assert_eq!(c.coboundary(), zc);
            }
        }
    }

    #[test]
    fn lift_with_constraints() {
        // z = 0 with zero constraints gives c = 0.
        let zero = EmSimplex::zero(2, 2, z());
        let c = lift_through_delta_on_simplex(&zero, &[]).unwrap().unwrap();
        assert!(c.is_zero());
        // Fundamental value on the top face of Δ¹, no constraints:
        // solvable since Δ¹ is acyclic.
        let mut z1 = EmSimplex::zero(1, 1, z());
        z1.set(vec![0, 1], vec![BigInt::from(7)]);
        let c = lift_through_delta_on_simplex(&z1, &[]).unwrap().unwrap();
        assert_eq!(c.coboundary(), z1);
        // Inconsistent full prescription: absent.
        let c = lift_through_delta_on_simplex(
            &z1,
            &[(vec![0], vec![BigInt::from(0)]), (vec![1], vec![BigInt::from(0)])],
        )
        .unwrap();
        assert!(c.is_none());
        // Consistent prescription: present.
        let c = lift_through_delta_on_simplex(
            &z1,
            &[(vec![0], vec![BigInt::from(1)]), (vec![1], vec![BigInt::from(8)])],
        )
        .unwrap();
        assert!(c.is_some());
    }

    #[test]
    fn cup_with_unit_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_cochain(&mut rng, 3, 2, &z());
        // Constant 1 as a 0-cochain.
        let mut one = EmSimplex::zero(3, 0, z());
        for v in 0..=3u8 {
            one.set(vec![v], vec![BigInt::from(1)]);
        }
        let prod = cup_product(&one, &u).unwrap();
        assert_eq!(prod, u);
        let prod = cup_product(&u, &one).unwrap();
        assert_eq!(prod, u);
    }

    #[test]
    fn cup_leibniz_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..15 {
            let u = random_cochain(&mut rng, 4, 1, &z());
            let v = random_cochain(&mut rng, 4, 2, &z());
            // δ(u ⌣ v) = δu ⌣ v + (-1)^deg(u) u ⌣ δv.
            let lhs = cup_product(&u, &v).unwrap().coboundary();
            let term1 = cup_product(&u.coboundary(), &v).unwrap();
            let term2 = cup_product(&u, &v.coboundary()).unwrap();
            let rhs = term1.sub(&term2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cup_one_coboundary_identity_mod_2() {
        // Steenrod's coboundary formula, which mod 2 reads
        // δ(u⌣₁v) = u⌣v + v⌣u + δu⌣₁v + u⌣₁δv.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let u = random_cochain(&mut rng, 5, 2, &z2());
            let v = random_cochain(&mut rng, 5, 2, &z2());
            let lhs = cup_one(&u, &v).unwrap().coboundary();
            let mut rhs = cup_product(&u, &v).unwrap();
            rhs = rhs.add(&cup_product(&v, &u).unwrap()).unwrap();
            rhs = rhs.add(&cup_one(&u.coboundary(), &v).unwrap()).unwrap();
            rhs = rhs.add(&cup_one(&u, &v.coboundary()).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cup_square_of_cocycle_is_cocycle_mod_2() {
        // For a mod-2 cocycle c, the c⌣₁δc terms vanish and c⌣₁c is a
        // cocycle: this is the relation driving Sq².
        let k = EmSpace::new(EmKind::K, 2, z2());
        for zc in k.enumerate_level(3) {
            let sq = cup_one(&zc, &zc).unwrap();
            assert!(sq.coboundary().is_zero(), "c⌣₁c not a cocycle for {zc:?}");
        }
    }

    #[test]
    fn strip_value_on_em_space() {
        let e = EmSpace::new(EmKind::E, 1, z2());
        // Note {01: 1, 02: 1} would itself be s_1 of an edge cochain; this
        // one is genuinely nondegenerate.
        let mut c = EmSimplex::zero(2, 1, z2());
        c.set(vec![0, 1], vec![BigInt::from(1)]);
        c.set(vec![1, 2], vec![BigInt::from(1)]);
        let deg = c.degeneracy(1);
        let (word, core, core_dim) = strip_value(&e, &SimValue::Em(deg.clone()), 3);
        assert_eq!(word, vec![1]);
        assert_eq!(core_dim, 2);
        assert_eq!(core, SimValue::Em(c));
        let back = apply_word(&e, &core, core_dim, &word);
        assert_eq!(back, SimValue::Em(deg));
    }
}
