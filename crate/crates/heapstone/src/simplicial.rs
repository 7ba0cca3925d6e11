//! Finite simplicial sets and simplicial maps, plus the combinatorial
//! constructions the tower machinery consumes: products, fibered products
//! and powers, diagonal subspaces, prisms over Δ², mapping cylinders and
//! fibrewise suspension.
//!
//! Possibly-degenerate simplices are `(degeneracy word, nondegenerate
//! cell)` pairs with the word kept in the canonical strictly decreasing
//! normal form, so equality of simplices is plain structural equality.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type SsRef = Arc<SimplicialSet>;

/// Inserts `s_i` in front of a canonical decreasing degeneracy word,
/// renormalizing with `s_i s_j = s_{j+1} s_i` (i ≤ j).
fn word_insert(word: &mut Vec<usize>, i: usize) {
    let mut cur = i;
    let mut pos = 0;
    while pos < word.len() && cur <= word[pos] {
        word[pos] += 1;
        pos += 1;
    }
    word.insert(pos, cur);
}

/// Normal form of the composition `outer ∘ inner` of two canonical words.
fn word_compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    let mut word = inner.to_vec();
    for &j in outer.iter().rev() {
        word_insert(&mut word, j);
    }
    word
}

/// Pushes `d_i` through a canonical word. Returns the new word and the
/// face index to apply to the core, or `None` when the face is absorbed
/// by a degeneracy.
fn word_face(word: &[usize], i: usize) -> (Vec<usize>, Option<usize>) {
    let mut out = Vec::with_capacity(word.len());
    let mut cur = i;
    for (pos, &j) in word.iter().enumerate() {
        if cur < j {
            out.push(j - 1);
        } else if cur == j || cur == j + 1 {
            out.extend_from_slice(&word[pos + 1..]);
            return (out, None);
        } else {
            out.push(j);
            cur -= 1;
        }
    }
    (out, Some(cur))
}

/// The monotone surjection of vertices realized by a degeneracy word on a
/// simplex of the given total dimension: position m of the degenerate
/// simplex maps to `surjection[m]` of the core.
fn word_surjection(word: &[usize], total_dim: usize) -> Vec<usize> {
    (0..=total_dim)
        .map(|m| {
            let mut r = m;
            for &j in word {
                if r > j {
                    r -= 1;
                }
            }
            r
        })
        .collect()
}

/// A possibly-degenerate simplex: canonical word applied to a
/// nondegenerate cell `(nd_dim, idx)` of some simplicial set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub word: Vec<usize>,
    pub nd_dim: usize,
    pub idx: usize,
}

impl Simplex {
    pub fn nondegenerate(nd_dim: usize, idx: usize) -> Self {
        Simplex { word: Vec::new(), nd_dim, idx }
    }

    pub fn dim(&self) -> usize {
        self.nd_dim + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }

    pub fn core(&self) -> Simplex {
        Simplex::nondegenerate(self.nd_dim, self.idx)
    }

    /// Applies an extra degeneracy word on the outside.
    pub fn degenerate_by(&self, outer: &[usize]) -> Simplex {
        Simplex {
            word: word_compose(outer, &self.word),
            nd_dim: self.nd_dim,
            idx: self.idx,
        }
    }
}

impl std::fmt::Debug for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.word.is_empty() {
            write!(f, "({}#{})", self.nd_dim, self.idx)
        } else {
            let w: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
            write!(f, "({} {}#{})", w.join(" "), self.nd_dim, self.idx)
        }
    }
}

struct CellData {
    faces: Vec<Simplex>,
    label: String,
}

/// A finite simplicial set given by its nondegenerate cells and their
/// face tables.
pub struct SimplicialSet {
    cells: Vec<Vec<CellData>>,
}

impl SimplicialSet {
    pub fn dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, |v| v.len())
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(|v| v.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }

    pub fn label(&self, dim: usize, idx: usize) -> &str {
        &self.cells[dim][idx].label
    }

    pub fn cell_by_label(&self, label: &str) -> Option<Simplex> {
        for (d, layer) in self.cells.iter().enumerate() {
            if let Some(i) = layer.iter().position(|c| c.label == label) {
                return Some(Simplex::nondegenerate(d, i));
            }
        }
        None
    }

    pub fn nondeg_cells(&self, dim: usize) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.cell_count(dim)).map(move |i| Simplex::nondegenerate(dim, i))
    }

    /// The i-th face of a possibly-degenerate simplex.
    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        assert!(i <= s.dim(), "face index out of range");
        let (outer, core_face) = word_face(&s.word, i);
        match core_face {
            None => Simplex { word: outer, nd_dim: s.nd_dim, idx: s.idx },
            Some(fi) => {
                let entry = &self.cells[s.nd_dim][s.idx].faces[fi];
                entry.degenerate_by(&outer)
            }
        }
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Simplex {
        assert!(i <= s.dim(), "degeneracy index out of range");
        let mut word = s.word.clone();
        word_insert(&mut word, i);
        Simplex { word, nd_dim: s.nd_dim, idx: s.idx }
    }

    /// Vertex ids (0-cell indices) of a possibly-degenerate simplex.
    pub fn vertices(&self, s: &Simplex) -> Vec<usize> {
        let core_verts = self.core_vertices(s.nd_dim, s.idx);
        word_surjection(&s.word, s.dim()).iter().map(|&m| core_verts[m]).collect()
    }

    fn core_vertices(&self, dim: usize, idx: usize) -> Vec<usize> {
        if dim == 0 {
            return vec![idx];
        }
        // Vertex k of the cell is vertex k of its 0-th face for k > 0,
        // and vertex 0 of its last face.
        let last = &self.cells[dim][idx].faces[dim];
        let first = &self.cells[dim][idx].faces[0];
        let mut out = Vec::with_capacity(dim + 1);
        out.push(self.vertices(last)[0]);
        out.extend(self.vertices(first));
        out
    }

    /// Checks the simplicial identities d_i d_j = d_{j-1} d_i (i < j) on
    /// every nondegenerate cell.
    pub fn validate(&self) -> Result<()> {
        for d in 0..=self.dim() {
            for s in self.nondeg_cells(d) {
                for (fi, f) in self.cells[d][s.idx].faces.iter().enumerate() {
                    if f.dim() + 1 != d {
                        return Err(Error::Internal(format!(
                            "face {fi} of cell {}#{} has wrong dimension",
                            d, s.idx
                        )));
                    }
                }
                if d < 2 {
                    continue;
                }
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::Internal(format!(
                                "simplicial identity d_{i} d_{j} failed at {d}#{}",
                                s.idx
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All simplices of total dimension `q`, degenerate included.
    pub fn all_simplices(&self, q: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for p in 0..=q.min(self.dim()) {
            for idx in 0..self.cell_count(p) {
                for word in degeneracy_words(q, p) {
                    out.push(Simplex { word, nd_dim: p, idx });
                }
            }
        }
        out
    }
}

/// All canonical decreasing words lifting a p-cell to total dimension q:
/// subsets of {0, …, q-1} of size q - p, listed decreasing.
pub fn degeneracy_words(q: usize, p: usize) -> Vec<Vec<usize>> {
    let k = q - p;
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn rec(out: &mut Vec<Vec<usize>>, pick: &mut Vec<usize>, next: usize, k: usize, q: usize) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        // Remaining slots need indices below `next`.
        let need = k - pick.len();
        let mut i = next;
        while i + 1 >= need {
            pick.push(i);
            rec(out, pick, i.wrapping_sub(1), k, q);
            pick.pop();
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }
    if k == 0 {
        out.push(Vec::new());
    } else if q >= 1 {
        rec(&mut out, &mut pick, q - 1, k, q);
    }
    out
}

/// Incremental builder with label-based face references.
pub struct SetBuilder {
    cells: Vec<Vec<CellData>>,
    index: HashMap<String, (usize, usize)>,
}

impl SetBuilder {
    pub fn new() -> Self {
        SetBuilder { cells: Vec::new(), index: HashMap::new() }
    }

    pub fn add_vertex(&mut self, label: &str) -> Simplex {
        self.add_cell(0, label, Vec::new()).unwrap()
    }

    /// Adds a nondegenerate cell with explicit face simplices.
    pub fn add_cell(&mut self, dim: usize, label: &str, faces: Vec<Simplex>) -> Result<Simplex> {
        if dim > 0 && faces.len() != dim + 1 {
            return Err(Error::Input(format!(
                "cell {label} of dimension {dim} needs {} faces, got {}",
                dim + 1,
                faces.len()
            )));
        }
        if self.index.contains_key(label) {
            return Err(Error::Input(format!("duplicate cell label {label}")));
        }
        while self.cells.len() <= dim {
            self.cells.push(Vec::new());
        }
        let idx = self.cells[dim].len();
        self.cells[dim].push(CellData { faces, label: label.to_string() });
        self.index.insert(label.to_string(), (dim, idx));
        Ok(Simplex::nondegenerate(dim, idx))
    }

    pub fn lookup(&self, label: &str) -> Option<Simplex> {
        self.index.get(label).map(|&(d, i)| Simplex::nondegenerate(d, i))
    }

    pub fn finish(self) -> Result<SsRef> {
        let set = SimplicialSet { cells: self.cells };
        set.validate()?;
        Ok(Arc::new(set))
    }
}

impl Default for SetBuilder {
    fn default() -> Self {
        Self::new()
    }
}

fn subset_label(verts: &[usize]) -> String {
    let parts: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
    parts.join ("-")
}

/// Builds a simplicial set from a list of top-dimensional vertex tuples
/// (increasing vertex ids), closing under faces. This is how ordered
/// simplicial complexes (triangulated surfaces, boundaries of simplices)
/// enter the engine.
pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<SsRef> {
    let mut subsets: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    fn insert_closed(
        subsets: &mut Vec<Vec<Vec<usize>>>,
        seen: &mut HashMap<Vec<usize>, usize>,
        verts: &[usize],
    ) {
        if seen.contains_key(verts) {
            return;
        }
        let d = verts.len() - 1;
        while subsets.len() <= d {
            subsets.push(Vec::new());
        }
        subsets[d].push(verts.to_vec());
        seen.insert(verts.to_vec(), subsets[d].len() - 1);
        if d > 0 {
            for i in 0..=d {
                let mut face: Vec<usize> = verts.to_vec();
                face.remove(i);
                insert_closed(subsets, seen, &face);
            }
        }
    }
    for v in 0..n_vertices {
        insert_closed(&mut subsets, &mut seen, &[v]);
    }
    for facet in facets {
        let mut sorted = facet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != facet.len() {
            return Err(Error::Input(format!("facet {facet:?} has repeated vertices")));
        }
        if sorted.iter().any(|&v| v >= n_vertices) {
            return Err(Error::Input(format!("facet {facet:?} references a missing vertex")));
        }
        insert_closed(&mut subsets, &mut seen, &sorted);
    }
    // Deterministic order within a dimension.
    for layer in &mut subsets {
        layer.sort();
    }
    let mut builder = SetBuilder::new();
    for (d, layer) in subsets.iter().enumerate() {
        for verts in layer {
            let faces = (0..=d)
                .filter(|_| d > 0)
                .map(|i| {
                    let mut fv = verts.clone();
                    fv.remove(i);
                    builder.lookup(&subset_label(&fv)).expect("faces inserted first")
                })
                .collect();
            builder.add_cell(d, &subset_label(verts), faces)?;
        }
    }
    builder.finish()
}

/// The standard n-simplex: nondegenerate cells are the increasing vertex
/// tuples in {0, …, n}.
pub fn standard_simplex(n: usize) -> SsRef {
    let facet: Vec<usize> = (0..=n).collect();
    from_facets(n + 1, &[facet]).expect("standard simplex is valid")
}

/// ∂Δⁿ: the standard simplex minus its top cell.
pub fn boundary(n: usize) -> SsRef {
    assert!(n >= 1, "boundary needs n >= 1");
    let facets: Vec<Vec<usize>> = (0..=n)
        .map(|skip| (0..=n).filter(|&v| v != skip).collect())
        .collect();
    from_facets(n + 1, &facets).expect("boundary is valid")
}

/// Δ⁰.
pub fn point() -> SsRef {
    standard_simplex(0)
}

/// The minimal 6-vertex triangulation of the real projective plane
/// (antipodal quotient of the icosahedron), as an ordered complex.
pub fn rp2() -> SsRef {
    let facets: Vec<Vec<usize>> = vec![
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 4, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![3, 4, 5],
    ];
    from_facets(6, &facets).expect("RP^2 triangulation is valid")
}

/// The 7-vertex Möbius torus: triangles {i, i+1, i+3} and {i, i+2, i+3}
/// mod 7 on the complete graph K₇.
pub fn torus() -> SsRef {
    let mut facets = Vec::with_capacity(14);
    for i in 0..7usize {
        let mut a = vec![i, (i + 1) % 7, (i + 3) % 7];
        let mut b = vec![i, (i + 2) % 7, (i + 3) % 7];
        a.sort_unstable();
        b.sort_unstable();
        facets.push(a);
        facets.push(b);
    }
    facets.sort();
    facets.dedup();
    from_facets(7, &facets).expect("torus triangulation is valid")
}

/// A simplicial map between finite sets: values on nondegenerate cells,
/// extended to degenerate ones by naturality.
#[derive(Clone)]
pub struct SimplicialMap {
    pub source: SsRef,
    pub target: SsRef,
    values: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(source: SsRef, target: SsRef, values: Vec<Vec<Simplex>>) -> Result<Self> {
        let map = SimplicialMap { source, target, values };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(space: SsRef) -> Self {
        let values = (0..=space.dim())
            .map(|d| space.nondeg_cells(d).collect())
            .collect();
        SimplicialMap { source: space.clone(), target: space, values }
    }

    /// The unique map to Δ⁰.
    pub fn to_point(source: SsRef) -> Self {
        let target = point();
        let values = (0..=source.dim())
            .map(|d| {
                source
                    .nondeg_cells(d)
                    .map(|_| {
                        let mut s = Simplex::nondegenerate(0, 0);
                        for i in 0..d {
                            s = target.degeneracy(&s, i);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { source, target, values }
    }

    /// Builds a map by evaluating a function on nondegenerate cells.
    pub fn from_fn(
        source: SsRef,
        target: SsRef,
        f: impl Fn(&Simplex) -> Simplex,
    ) -> Result<Self> {
        let values = (0..=source.dim())
            .map(|d| source.nondeg_cells(d).map(|s| f(&s)).collect())
            .collect();
        SimplicialMap::new(source, target, values)
    }

    pub fn apply(&self, s: &Simplex) -> Simplex {
        let core_value = &self.values[s.nd_dim][s.idx];
        core_value.degenerate_by(&s.word)
    }

    pub fn validate(&self) -> Result<()> {
        for d in 0..=self.source.dim() {
            for s in self.source.nondeg_cells(d) {
                let v = self.apply(&s);
                if v.dim() != d {
                    return Err(Error::Internal(format!(
                        "map value at {d}#{} has dimension {}",
                        s.idx,
                        v.dim()
                    )));
                }
                for i in 0..=d {
                    if d == 0 {
                        continue;
                    }
                    let lhs = self.apply(&self.source.face(&s, i));
                    let rhs = self.target.face(&v, i);
                    if lhs != rhs {
                        return Err(Error::Internal(format!(
                            "map does not commute with d_{i} at {d}#{}",
                            s.idx
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&inner.target, &self.source) {
            return Err(Error::Usage("maps are not composable".into()));
        }
        let values = (0..=inner.source.dim())
            .map(|d| inner.source.nondeg_cells(d).map(|s| self.apply(&inner.apply(&s))).collect())
            .collect();
        Ok(SimplicialMap { source: inner.source.clone(), target: self.target.clone(), values })
    }

    pub fn is_injective_on_cells(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for d in 0..=self.source.dim() {
            for s in self.source.nondeg_cells(d) {
                let v = self.apply(&s);
                if !v.is_nondegenerate() || !seen.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

/// A pair (X, A) with A a subcomplex, stored as membership masks.
#[derive(Clone)]
pub struct SimplicialPair {
    pub space: SsRef,
    in_sub: Vec<Vec<bool>>,
}

impl SimplicialPair {
    pub fn new(space: SsRef, sub_cells: &[Simplex]) -> Result<Self> {
        let mut in_sub: Vec<Vec<bool>> =
            (0..=space.dim()).map(|d| vec![false; space.cell_count(d)]).collect();
        for s in sub_cells {
            if !s.is_nondegenerate() {
                return Err(Error::Usage("subcomplex must be given by nondegenerate cells".into()));
            }
            in_sub[s.nd_dim][s.idx] = true;
        }
        // Closure under faces.
        for d in (1..=space.dim()).rev() {
            for idx in 0..space.cell_count(d) {
                if !in_sub[d][idx] {
                    continue;
                }
                for i in 0..=d {
                    let f = space.face(&Simplex::nondegenerate(d, idx), i);
                    if !in_sub[f.nd_dim][f.idx] {
                        return Err(Error::Usage(format!(
                            "subcomplex not closed under faces at {}#{}",
                            d, idx
                        )));
                    }
                }
            }
        }
        Ok(SimplicialPair { space, in_sub })
    }

    pub fn closed(space: SsRef, seed: &[Simplex]) -> Self {
        let mut in_sub: Vec<Vec<bool>> =
            (0..=space.dim()).map(|d| vec![false; space.cell_count(d)]).collect();
        let mut stack: Vec<Simplex> = seed.iter().map(|s| s.core()).collect();
        while let Some(s) = stack.pop() {
            if in_sub[s.nd_dim][s.idx] {
                continue;
            }
            in_sub[s.nd_dim][s.idx] = true;
            for i in 0..=s.nd_dim {
                if s.nd_dim == 0 {
                    break;
                }
                stack.push(space.face(&s, i).core());
            }
        }
        SimplicialPair { space, in_sub }
    }

    pub fn empty_sub(space: SsRef) -> Self {
        let in_sub = (0..=space.dim()).map(|d| vec![false; space.cell_count(d)]).collect();
        SimplicialPair { space, in_sub }
    }

    pub fn full_sub(space: SsRef) -> Self {
        let in_sub = (0..=space.dim()).map(|d| vec![true; space.cell_count(d)]).collect();
        SimplicialPair { space, in_sub }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.in_sub[s.nd_dim][s.idx]
    }

    /// Nondegenerate cells of X ∖ A in dimension d.
    pub fn relative_cells(&self, d: usize) -> Vec<Simplex> {
        self.space
            .nondeg_cells(d)
            .filter(|s| !self.in_sub[s.nd_dim][s.idx])
            .collect()
    }

    /// max dim of X ∖ A, or None when A = X.
    pub fn relative_dim(&self) -> Option<usize> {
        (0..=self.space.dim()).rev().find(|&d| !self.relative_cells(d).is_empty())
    }

    pub fn sub_cells(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=self.space.dim() {
            for idx in 0..self.space.cell_count(d) {
                if self.in_sub[d][idx] {
                    out.push(Simplex::nondegenerate(d, idx));
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------
// Products and fibered powers
// ---------------------------------------------------------------------

/// X × Y with its two projections. Nondegenerate q-cells are pairs of
/// q-simplices whose degeneracy words share no index (Eilenberg-Zilber).
pub struct Product {
    pub space: SsRef,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pairs: HashMap<(Simplex, Simplex), Simplex>,
    components: Vec<Vec<(Simplex, Simplex)>>,
}

impl Product {
    /// The product cell for a pair of equal-dimension simplices; strips
    /// common degeneracies to reach the canonical form.
    pub fn pair_value(&self, a: &Simplex, b: &Simplex) -> Simplex {
        assert_eq!(a.dim(), b.dim(), "pairing simplices of different dimensions");
        let (word, core_a, core_b) = strip_common(a, b);
        let core = self
            .pairs
            .get(&(core_a.clone(), core_b.clone()))
            .unwrap_or_else(|| panic!("pair ({core_a:?}, {core_b:?}) missing from product"));
        core.degenerate_by(&word)
    }

    pub fn components(&self, cell: &Simplex) -> (Simplex, Simplex) {
        let (a, b) = &self.components[cell.nd_dim][cell.idx];
        (a.degenerate_by(&cell.word), b.degenerate_by(&cell.word))
    }
}

/// Splits off the maximal common degeneracy word of a tuple of simplices.
fn strip_common_tuple(parts: &[Simplex]) -> (Vec<usize>, Vec<Simplex>) {
    let mut cores: Vec<Simplex> = parts.to_vec();
    let mut strip_order: Vec<usize> = Vec::new();
    loop {
        let mut common: Option<usize> = None;
        if let Some(first) = cores.first() {
            'search: for &j in &first.word {
                if cores[1..].iter().all(|c| c.word.contains(&j)) {
                    common = Some(j);
                    break 'search;
                }
            }
        }
        let Some(j) = common else { break };
        // x = s_j (d_j x) for every component, since j is a degeneracy
        // direction of each.
        for c in cores.iter_mut() {
            let (word, face) = word_face(&c.word, j);
            assert!(face.is_none(), "stripping a shared degeneracy cannot hit the core");
            c.word = word;
        }
        strip_order.push(j);
    }
    // Rebuild the outer word: strip_order lists operators outermost first.
    let mut word = Vec::new();
    for &j in strip_order.iter().rev() {
        word_insert(&mut word, j);
    }
    (word, cores)
}

fn strip_common(a: &Simplex, b: &Simplex) -> (Vec<usize>, Simplex, Simplex) {
    let (word, mut cores) = strip_common_tuple(&[a.clone(), b.clone()]);
    let cb = cores.pop().unwrap();
    let ca = cores.pop().unwrap();
    (word, ca, cb)
}

fn words_disjoint(parts: &[Simplex]) -> bool {
    if let Some(first) = parts.first() {
        for &j in &first.word {
            if parts[1..].iter().all(|c| c.word.contains(&j)) {
                return false;
            }
        }
    }
    true
}

pub fn product(x: &SsRef, y: &SsRef) -> Result<Product> {
    let tuples = enumerate_tuple_cells(&[x.clone(), y.clone()], None)?;
    build_product_from_tuples(x, y, tuples)
}

/// Z ×_B Z' for two maps with common target.
pub fn fibered_product(f: &SimplicialMap, g: &SimplicialMap) -> Result<Product> {
    if !Arc::ptr_eq(&f.target, &g.target) {
        return Err(Error::Usage("fibered product needs a common target".into()));
    }
    let tuples = enumerate_tuple_cells(
        &[f.source.clone(), g.source.clone()],
        Some(&[f.clone(), g.clone()]),
    )?;
    build_product_from_tuples(&f.source, &g.source, tuples)
}

fn build_product_from_tuples(
    x: &SsRef,
    y: &SsRef,
    tuples: Vec<Vec<Vec<Simplex>>>,
) -> Result<Product> {
    let mut builder_cells: Vec<Vec<(Simplex, Simplex)>> = tuples
        .into_iter()
        .map(|layer| layer.into_iter().map(|mut t| {
            let b = t.pop().unwrap();
            let a = t.pop().unwrap();
            (a, b)
        }).collect())
        .collect();
    for layer in &mut builder_cells {
        layer.sort();
    }
    let mut pairs = HashMap::new();
    for (d, layer) in builder_cells.iter().enumerate() {
        for (idx, pair) in layer.iter().enumerate() {
            pairs.insert(pair.clone(), Simplex::nondegenerate(d, idx));
        }
    }
    // Face tables via componentwise faces + canonical stripping.
    let mut builder = SetBuilder::new();
    for (d, layer) in builder_cells.iter().enumerate() {
        for (idx, (a, b)) in layer.iter().enumerate() {
            let label = format!("({}|{})@{d}.{idx}", describe(x, a), describe(y, b));
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let fa = x.face(a, i);
                        let fb = y.face(b, i);
                        let (word, ca, cb) = strip_common(&fa, &fb);
                        pairs[&(ca, cb)].degenerate_by(&word)
                    })
                    .collect()
            };
            builder.add_cell(d, &label, faces)?;
        }
    }
    let space = builder.finish()?;
    let left_values: Vec<Vec<Simplex>> = builder_cells
        .iter()
        .map(|layer| layer.iter().map(|(a, _)| a.clone()).collect())
        .collect();
    let right_values: Vec<Vec<Simplex>> = builder_cells
        .iter()
        .map(|layer| layer.iter().map(|(_, b)| b.clone()).collect())
        .collect();
    let left = SimplicialMap::new(space.clone(), x.clone(), left_values)?;
    let right = SimplicialMap::new(space.clone(), y.clone(), right_values)?;
    Ok(Product { space, left, right, pairs, components: builder_cells })
}

fn describe(set: &SsRef, s: &Simplex) -> String {
    if s.word.is_empty() {
        set.label(s.nd_dim, s.idx).to_string()
    } else {
        let w: Vec<String> = s.word.iter().map(|i| format!("s{i}")).collect();
        format!("{} {}", w.join(""), set.label(s.nd_dim, s.idx))
    }
}

/// All nondegenerate tuple cells per dimension: tuples of equal-dimension
/// simplices with no shared degeneracy index, optionally constrained to
/// agree after mapping to a common base.
fn enumerate_tuple_cells(
    factors: &[SsRef],
    base_maps: Option<&[SimplicialMap]>,
) -> Result<Vec<Vec<Vec<Simplex>>>> {
    let max_dim: usize = factors.iter().map(|f| f.dim()).sum();
    let mut out: Vec<Vec<Vec<Simplex>>> = Vec::with_capacity(max_dim + 1);
    for q in 0..=max_dim {
        let mut layer: Vec<Vec<Simplex>> = Vec::new();
        // Candidate simplices per factor, grouped by base image when maps
        // are given.
        let per_factor: Vec<Vec<Simplex>> =
            factors.iter().map(|f| f.all_simplices(q)).collect();
        let mut stack: Vec<Vec<Simplex>> = vec![Vec::new()];
        while let Some(partial) = stack.pop() {
            let k = partial.len();
            if k == factors.len() {
                if words_disjoint(&partial) {
                    layer.push(partial);
                }
                continue;
            }
            for cand in &per_factor[k] {
                if let Some(maps) = base_maps {
                    if k > 0 {
                        let b0 = maps[0].apply(&partial[0]);
                        if maps[k].apply(cand) != b0 {
                            continue;
                        }
                    }
                }
                let mut next = partial.clone();
                next.push(cand.clone());
                stack.push(next);
            }
        }
        if layer.is_empty() && q > 0 && out[q - 1].is_empty() {
            break;
        }
        out.push(layer);
    }
    // Trim empty top layers.
    while out.len() > 1 && out.last().is_some_and(|l| l.is_empty()) {
        out.pop();
    }
    Ok(out)
}

/// The k-fold fibered power Z ×_B … ×_B Z of a map, with projections.
pub struct FiberedPower {
    pub space: SsRef,
    pub projections: Vec<SimplicialMap>,
    tuples: HashMap<Vec<Simplex>, Simplex>,
    components: Vec<Vec<Vec<Simplex>>>,
}

impl FiberedPower {
    pub fn tuple_value(&self, parts: &[Simplex]) -> Simplex {
        let (word, cores) = strip_common_tuple(parts);
        let core = self
            .tuples
            .get(&cores)
            .unwrap_or_else(|| panic!("tuple {cores:?} missing from fibered power"));
        core.degenerate_by(&word)
    }

    pub fn components(&self, cell: &Simplex) -> Vec<Simplex> {
        self.components[cell.nd_dim][cell.idx]
            .iter()
            .map(|c| c.degenerate_by(&cell.word))
            .collect()
    }
}

pub fn fibered_power(f: &SimplicialMap, k: usize) -> Result<FiberedPower> {
    assert!(k >= 1);
    let factors: Vec<SsRef> = (0..k).map(|_| f.source.clone()).collect();
    let maps: Vec<SimplicialMap> = (0..k).map(|_| f.clone()).collect();
    let raw = enumerate_tuple_cells(&factors, Some(&maps))?;
    let mut components: Vec<Vec<Vec<Simplex>>> = raw;
    for layer in &mut components {
        layer.sort();
    }
    let mut tuples = HashMap::new();
    for (d, layer) in components.iter().enumerate() {
        for (idx, t) in layer.iter().enumerate() {
            tuples.insert(t.clone(), Simplex::nondegenerate(d, idx));
        }
    }
    let mut builder = SetBuilder::new();
    for (d, layer) in components.iter().enumerate() {
        for (idx, t) in layer.iter().enumerate() {
            let label = {
                let parts: Vec<String> = t.iter().map(|s| describe(&f.source, s)).collect();
                format!("({})@{d}.{idx}", parts.join("|"))
            };
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let fparts: Vec<Simplex> =
                            t.iter().map(|s| f.source.face(s, i)).collect();
                        let (word, cores) = strip_common_tuple(&fparts);
                        tuples[&cores].degenerate_by(&word)
                    })
                    .collect()
            };
            builder.add_cell(d, &label, faces)?;
        }
    }
    let space = builder.finish()?;
    let projections = (0..k)
        .map(|j| {
            let values: Vec<Vec<Simplex>> = components
                .iter()
                .map(|layer| layer.iter().map(|t| t[j].clone()).collect())
                .collect();
            SimplicialMap::new(space.clone(), f.source.clone(), values)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiberedPower { space, projections, tuples, components })
}

/// A subspace carved out of an ambient finite set by a predicate on
/// nondegenerate cells (which must be closed under faces), represented as
/// an inclusion.
pub struct Subspace {
    pub space: SsRef,
    pub include: SimplicialMap,
}

pub fn subspace_where(ambient: &SsRef, pred: impl Fn(&Simplex) -> bool) -> Result<Subspace> {
    let mut keep: Vec<Vec<usize>> = Vec::new();
    let mut reindex: HashMap<(usize, usize), usize> = HashMap::new();
    for d in 0..=ambient.dim() {
        let mut layer = Vec::new();
        for s in ambient.nondeg_cells(d) {
            if pred(&s) {
                reindex.insert((d, s.idx), layer.len());
                layer.push(s.idx);
            }
        }
        keep.push(layer);
    }
    let mut builder = SetBuilder::new();
    for (d, layer) in keep.iter().enumerate() {
        for (new_idx, &old_idx) in layer.iter().enumerate() {
            let label = format!("{}@{d}.{new_idx}", ambient.label(d, old_idx));
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let f = ambient.face(&Simplex::nondegenerate(d, old_idx), i);
                        let ni = *reindex.get(&(f.nd_dim, f.idx)).unwrap_or_else(|| {
                            panic!("subspace predicate not closed under faces at {d}#{old_idx}")
                        });
                        Simplex { word: f.word, nd_dim: f.nd_dim, idx: ni }
                    })
                    .collect()
            };
            builder.add_cell(d, &label, faces)?;
        }
    }
    let space = builder.finish()?;
    let values: Vec<Vec<Simplex>> = keep
        .iter()
        .map(|layer| layer.iter().map(|&old| Simplex::nondegenerate(0, old)).collect::<Vec<_>>())
        .enumerate()
        .map(|(d, layer)| {
            layer.into_iter().map(|s| Simplex::nondegenerate(d, s.idx)).collect()
        })
        .collect();
    let include = SimplicialMap::new(space.clone(), ambient.clone(), values)?;
    Ok(Subspace { space, include })
}

/// δ^{r₁…r_k} Z: tuples in the r-fold fibered power constant on the
/// pattern blocks, as the k-fold power plus its inclusion.
pub struct DiagSubspace {
    pub power: FiberedPower,
    pub include_into: Arc<FiberedPower>,
    pub include: SimplicialMap,
}

pub fn diag_subspace(f: &SimplicialMap, pattern: &[usize]) -> Result<DiagSubspace> {
    if pattern.iter().any(|&r| r == 0) {
        return Err(Error::Usage("diagonal pattern entries must be positive".into()));
    }
    let r: usize = pattern.iter().sum();
    let k = pattern.len();
    let big = Arc::new(fibered_power(f, r)?);
    let small = fibered_power(f, k)?;
    let values: Vec<Vec<Simplex>> = small
        .components
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|t| {
                    let mut expanded = Vec::with_capacity(r);
                    for (j, &reps) in pattern.iter().enumerate() {
                        for _ in 0..reps {
                            expanded.push(t[j].clone());
                        }
                    }
                    big.tuple_value(&expanded)
                })
                .collect()
        })
        .collect();
    let include = SimplicialMap::new(small.space.clone(), big.space.clone(), values)?;
    Ok(DiagSubspace { power: small, include_into: big, include })
}

/// Membership of a tuple cell of the r-fold power in δ^{pattern}.
pub fn diag_membership(power: &FiberedPower, cell: &Simplex, pattern: &[usize]) -> bool {
    let parts = power.components(cell);
    let mut offset = 0;
    for &reps in pattern {
        for j in 1..reps {
            if parts[offset + j] != parts[offset] {
                return false;
            }
        }
        offset += reps;
    }
    true
}

// ---------------------------------------------------------------------
// Mapping cylinder and fibrewise suspension
// ---------------------------------------------------------------------

/// Rewrites cells of a finite set using redirects: some nondegenerate
/// cells of the input are replaced by (possibly degenerate) simplices of
/// the output, the rest are kept. Used by cylinder and suspension
/// quotients, where one pass suffices because glued cells never collide.
struct QuotientAssembly {
    builder: SetBuilder,
    /// For each (dim, idx) of the input: either a kept new cell or a
    /// redirect value in new coordinates.
    translation: HashMap<(usize, usize), Simplex>,
}

impl QuotientAssembly {
    fn translate(&self, s: &Simplex) -> Simplex {
        let t = &self.translation[&(s.nd_dim, s.idx)];
        t.degenerate_by(&s.word)
    }
}

/// The mapping cylinder replacement of ι: A → X: the pushout
/// (Δ¹×A) ∪_{1×A} X together with the end inclusion of A at 0 and the
/// canonical projection back to X.
pub struct Cylinder {
    pub space: SsRef,
    pub include_a: SimplicialMap,
    pub include_x: SimplicialMap,
    pub project: SimplicialMap,
}

pub fn cylinder_replacement(iota: &SimplicialMap) -> Result<Cylinder> {
    let a = iota.source.clone();
    let x = iota.target.clone();
    let interval = standard_simplex(1);
    let prism = product(&interval, &a)?;
    let one = Simplex::nondegenerate(0, 1);

    let mut asm = QuotientAssembly { builder: SetBuilder::new(), translation: HashMap::new() };
    // X cells survive unchanged.
    for d in 0..=x.dim() {
        for s in x.nondeg_cells(d) {
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d).map(|i| asm.translate(&x.face(&s, i))).collect()
            };
            let cell = asm.builder.add_cell(d, &format!("x:{}", x.label(d, s.idx)), faces)?;
            asm.translation.insert((d, s.idx), cell);
        }
    }
    // Offset bookkeeping: translate X coordinates and prism coordinates
    // into the same new set, so keep separate translation maps.
    let x_translation = asm.translation.clone();
    asm.translation.clear();

    let vertices_in_one = |t: &Simplex| -> bool {
        interval.vertices(t).iter().all(|&v| v == one.idx)
    };
    for d in 0..=prism.space.dim() {
        for s in prism.space.nondeg_cells(d) {
            let (t_part, a_part) = prism.components(&s);
            if vertices_in_one(&t_part) {
                // Glued to X along ι: record a redirect.
                let img = iota.apply(&a_part);
                let target = x_translation[&(img.nd_dim, img.idx)].degenerate_by(&img.word);
                asm.translation.insert((d, s.idx), target);
                continue;
            }
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let f = prism.space.face(&s, i);
                        match asm.translation.get(&(f.nd_dim, f.idx)) {
                            Some(t) => t.degenerate_by(&f.word),
                            None => panic!("cylinder face processed out of order"),
                        }
                    })
                    .collect()
            };
            let cell = asm.builder.add_cell(
                d,
                &format!("cyl:{}", prism.space.label(d, s.idx)),
                faces,
            )?;
            asm.translation.insert((d, s.idx), cell);
        }
    }
    let prism_translation = asm.translation;
    let space = asm.builder.finish()?;

    // A ↪ cylinder at the 0 end.
    let zero = Simplex::nondegenerate(0, 0);
    let include_a = SimplicialMap::from_fn(a.clone(), space.clone(), |s| {
        let mut t = zero.clone();
        for i in 0..s.nd_dim {
            t = interval.degeneracy(&t, i);
        }
        let cell = prism.pair_value(&t, s);
        prism_translation[&(cell.nd_dim, cell.idx)].degenerate_by(&cell.word)
    })?;
    let include_x = SimplicialMap::from_fn(x.clone(), space.clone(), |s| {
        x_translation[&(s.nd_dim, s.idx)].clone()
    })?;
    // Deformation projection: collapse the cylinder direction.
    let mut proj_values: Vec<Vec<Simplex>> = (0..=space.dim()).map(|_| Vec::new()).collect();
    for d in 0..=x.dim() {
        for s in x.nondeg_cells(d) {
            let new = &x_translation[&(d, s.idx)];
            set_value(&mut proj_values, new, s.clone());
        }
    }
    for d in 0..=prism.space.dim() {
        for s in prism.space.nondeg_cells(d) {
            let new = &prism_translation[&(d, s.idx)];
            if !new.word.is_empty() {
                continue;
            }
            let (_, a_part) = prism.components(&s);
            set_value(&mut proj_values, new, iota.apply(&a_part));
        }
    }
    let project = SimplicialMap::new(space.clone(), x, proj_values)?;
    Ok(Cylinder { space, include_a, include_x, project })
}

fn set_value(values: &mut [Vec<Simplex>], at: &Simplex, v: Simplex) {
    debug_assert!(at.word.is_empty());
    let layer = &mut values[at.nd_dim];
    if layer.len() <= at.idx {
        layer.resize(at.idx + 1, Simplex::nondegenerate(0, usize::MAX));
    }
    layer[at.idx] = v;
}

/// Fibrewise suspension Σ_B Y of φ: Y → B: the quotient of Δ¹×Y that
/// collapses each end onto its own copy of B along φ. Comes with the
/// projection to B, the two end sections, and the quotient map from Δ¹×Y.
pub struct FibrewiseSuspension {
    pub space: SsRef,
    pub project: SimplicialMap,
    pub end_sections: [SimplicialMap; 2],
    pub prism: Product,
    pub quotient: SimplicialMap,
}

pub fn fibrewise_suspension(phi: &SimplicialMap) -> Result<FibrewiseSuspension> {
    let y = phi.source.clone();
    let b = phi.target.clone();
    let interval = standard_simplex(1);
    let prism = product(&interval, &y)?;

    let mut builder = SetBuilder::new();
    // Two copies of B, one per end.
    let mut end_translation: [HashMap<(usize, usize), Simplex>; 2] =
        [HashMap::new(), HashMap::new()];
    for end in 0..2 {
        for d in 0..=b.dim() {
            for s in b.nondeg_cells(d) {
                let faces = if d == 0 {
                    Vec::new()
                } else {
                    (0..=d)
                        .map(|i| {
                            let f = b.face(&s, i);
                            end_translation[end][&(f.nd_dim, f.idx)].degenerate_by(&f.word)
                        })
                        .collect()
                };
                let cell =
                    builder.add_cell(d, &format!("end{end}:{}", b.label(d, s.idx)), faces)?;
                end_translation[end].insert((d, s.idx), cell);
            }
        }
    }
    let mut translation: HashMap<(usize, usize), Simplex> = HashMap::new();
    for d in 0..=prism.space.dim() {
        for s in prism.space.nondeg_cells(d) {
            let (t_part, y_part) = prism.components(&s);
            let verts = interval.vertices(&t_part);
            if verts.iter().all(|&v| v == 0) || verts.iter().all(|&v| v == 1) {
                let end = verts[0];
                let img = phi.apply(&y_part);
                let target =
                    end_translation[end][&(img.nd_dim, img.idx)].degenerate_by(&img.word);
                translation.insert((d, s.idx), target);
                continue;
            }
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let f = prism.space.face(&s, i);
                        translation[&(f.nd_dim, f.idx)].degenerate_by(&f.word)
                    })
                    .collect()
            };
            let cell =
                builder.add_cell(d, &format!("mid:{}", prism.space.label(d, s.idx)), faces)?;
            translation.insert((d, s.idx), cell);
        }
    }
    let space = builder.finish()?;

    // Projection to B: ends by identity, middle through φ.
    let mut proj_values: Vec<Vec<Simplex>> = (0..=space.dim()).map(|_| Vec::new()).collect();
    for end in 0..2 {
        for d in 0..=b.dim() {
            for s in b.nondeg_cells(d) {
                let new = &end_translation[end][&(d, s.idx)];
                set_value(&mut proj_values, new, s.clone());
            }
        }
    }
    for d in 0..=prism.space.dim() {
        for s in prism.space.nondeg_cells(d) {
            if let Some(new) = translation.get(&(d, s.idx)) {
                if new.word.is_empty() && new.nd_dim == d {
                    let (_, y_part) = prism.components(&s);
                    // Only fills slots for kept (middle) cells.
                    if space.label(d, new.idx).starts_with("mid:") {
                        set_value(&mut proj_values, new, phi.apply(&y_part));
                    }
                }
            }
        }
    }
    let project = SimplicialMap::new(space.clone(), b.clone(), proj_values)?;
    let end_sections = [0usize, 1].map(|end| {
        SimplicialMap::from_fn(b.clone(), space.clone(), |s| {
            end_translation[end][&(s.nd_dim, s.idx)].clone()
        })
        .expect("end section is simplicial")
    });
    let quotient = SimplicialMap::from_fn(prism.space.clone(), space.clone(), |s| {
        translation[&(s.nd_dim, s.idx)].clone()
    })?;
    Ok(FibrewiseSuspension { space, project, end_sections, prism, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_normalize() {
        // s_2 s_3 s_1 = s_4 s_2 s_1.
        let mut w = vec![3, 1];
        word_insert(&mut w, 2);
        assert_eq!(w, vec![4, 2, 1]);
        let mut w = vec![5, 2];
        word_insert(&mut w, 2);
        assert_eq!(w, vec![6, 3, 2]);
        assert_eq!(word_compose(&[1], &[0]), vec![1, 0]);
        assert_eq!(word_compose(&[0], &[0]), vec![1, 0]);
    }

    #[test]
    fn face_through_word_identities() {
        // d_i s_i = id and d_{i+1} s_i = id.
        let (w, f) = word_face(&[2], 2);
        assert_eq!((w, f), (vec![], None));
        let (w, f) = word_face(&[2], 3);
        assert_eq!((w, f), (vec![], None));
        // d_0 s_2 = s_1 d_0.
        let (w, f) = word_face(&[2], 0);
        assert_eq!((w, f), (vec![1], Some(0)));
        // d_4 s_2 = s_2 d_3.
        let (w, f) = word_face(&[2], 4);
        assert_eq!((w, f), (vec![2], Some(3)));
    }

    #[test]
    fn standard_models_counts() {
        let d1 = standard_simplex(1);
        assert_eq!(d1.cell_count(0), 2);
        assert_eq!(d1.cell_count(1), 1);
        let bd2 = boundary(2);
        assert_eq!(bd2.cell_count(0), 3);
        assert_eq!(bd2.cell_count(1), 3);
        assert_eq!(bd2.dim(), 1);
        // ∂Δ⁵ has binomial counts C(6, k+1) with the top cell removed.
        let bd5 = boundary(5);
        assert_eq!(
            (0..=4).map(|d| bd5.cell_count(d)).collect::<Vec<_>>(),
            vec![6, 15, 20, 15, 6]
        );
        bd5.validate().unwrap();
    }

    #[test]
    fn vertices_of_degenerate() {
        let d2 = standard_simplex(2);
        let top = Simplex::nondegenerate(2, 0);
        assert_eq!(d2.vertices(&top), vec![0, 1, 2]);
        let deg = d2.degeneracy(&top, 1);
        assert_eq!(d2.vertices(&deg), vec![0, 1, 1, 2]);
    }

    #[test]
    fn product_square_counts() {
        let d1 = standard_simplex(1);
        let sq = product(&d1, &d1).unwrap();
        assert_eq!(sq.space.cell_count(0), 4);
        assert_eq!(sq.space.cell_count(1), 5);
        assert_eq!(sq.space.cell_count(2), 2);
        sq.space.validate().unwrap();
        sq.left.validate().unwrap();
        sq.right.validate().unwrap();
    }

    #[test]
    fn product_with_point_is_identity_shaped() {
        let bd2 = boundary(2);
        let pt = point();
        let p = product(&bd2, &pt).unwrap();
        for d in 0..=bd2.dim() {
            assert_eq!(p.space.cell_count(d), bd2.cell_count(d));
        }
    }

    #[test]
    fn prism_over_triangle() {
        let d1 = standard_simplex(1);
        let d2 = standard_simplex(2);
        let p = product(&d1, &d2).unwrap();
        // C(3,1) = 3 nondegenerate top cells.
        assert_eq!(p.space.cell_count(3), 3);
        p.space.validate().unwrap();
    }

    #[test]
    fn product_euler_multiplicative() {
        let bd2 = boundary(2);
        let d1 = standard_simplex(1);
        let p = product(&bd2, &d1).unwrap();
        assert_eq!(
            p.space.euler_characteristic(),
            bd2.euler_characteristic() * d1.euler_characteristic()
        );
        let q = product(&bd2, &bd2).unwrap();
        assert_eq!(q.space.euler_characteristic(), 0);
    }

    #[test]
    fn product_associative_cell_counts() {
        let d1 = standard_simplex(1);
        let bd2 = boundary(2);
        let left = product(&product(&d1, &bd2).unwrap().space, &d1).unwrap();
        let right = product(&d1, &product(&bd2, &d1).unwrap().space).unwrap();
        for d in 0..=left.space.dim().max(right.space.dim()) {
            assert_eq!(left.space.cell_count(d), right.space.cell_count(d));
        }
    }

    #[test]
    fn fibered_product_over_point_is_product() {
        let bd2 = boundary(2);
        let to_pt = SimplicialMap::to_point(bd2.clone());
        let fp = fibered_product(&to_pt, &to_pt).unwrap();
        let p = product(&bd2, &bd2).unwrap();
        for d in 0..=fp.space.dim().max(p.space.dim()) {
            assert_eq!(fp.space.cell_count(d), p.space.cell_count(d));
        }
    }

    #[test]
    fn fibered_product_of_identities_is_diagonal() {
        let bd2 = boundary(2);
        let id = SimplicialMap::identity(bd2.clone());
        let fp = fibered_product(&id, &id).unwrap();
        for d in 0..=bd2.dim() {
            assert_eq!(fp.space.cell_count(d), bd2.cell_count(d));
        }
        fp.space.validate().unwrap();
    }

    #[test]
    fn fibered_product_two_sections() {
        // Trivial 2-point-fiber bundle over Δ¹: F × Δ¹ with F = 2 points.
        let d1 = standard_simplex(1);
        let two = from_facets(2, &[vec![0], vec![1]]).unwrap();
        let bundle = product(&two, &d1).unwrap();
        let proj = bundle.right.clone();
        let fp = fibered_product(&proj, &proj).unwrap();
        // Over each vertex of Δ¹ there are 4 pairs of fiber points.
        assert_eq!(fp.space.cell_count(0), 8);
        // 4 components (pairs of sections), each an interval.
        assert_eq!(fp.space.cell_count(1), 4);
    }

    #[test]
    fn diag_subspace_conventions() {
        let bd2 = boundary(2);
        let to_pt = SimplicialMap::to_point(bd2.clone());
        // δ^{111} is the full 3-fold power.
        let d111 = diag_subspace(&to_pt, &[1, 1, 1]).unwrap();
        let full = fibered_power(&to_pt, 3).unwrap();
        for d in 0..=d111.power.space.dim() {
            assert_eq!(d111.power.space.cell_count(d), full.space.cell_count(d));
        }
        // δ^{21} ≅ Z ×_B Z via (x, y) ↦ (x, x, y).
        let d21 = diag_subspace(&to_pt, &[2, 1]).unwrap();
        let sq = fibered_power(&to_pt, 2).unwrap();
        for d in 0..=d21.power.space.dim() {
            assert_eq!(d21.power.space.cell_count(d), sq.space.cell_count(d));
        }
        d21.include.validate().unwrap();
        // Every δ^{21} cell image satisfies the membership predicate, and
        // intersecting with δ^{12} leaves the total diagonal δ³.
        let big = &d21.include_into;
        let mut both = 0;
        for d in 0..=big.space.dim() {
            for c in big.space.nondeg_cells(d) {
                let in21 = diag_membership(big, &c, &[2, 1]);
                let in12 = diag_membership(big, &c, &[1, 2]);
                if in21 && in12 {
                    both += 1;
                    assert!(diag_membership(big, &c, &[3]));
                }
            }
        }
        // The total diagonal is a copy of ∂Δ²: 6 cells.
        assert_eq!(both, 6);
    }

    #[test]
    fn cylinder_of_inclusion_retracts() {
        let bd2 = boundary(2);
        let sub = subspace_where(&bd2, |s| {
            bd2.vertices(s).iter().all(|&v| v <= 1)
        })
        .unwrap();
        let cyl = cylinder_replacement(&sub.include).unwrap();
        cyl.space.validate().unwrap();
        cyl.project.validate().unwrap();
        cyl.include_a.validate().unwrap();
        // The projection retracts the cylinder back onto X.
        let r = cyl.project.compose(&cyl.include_x).unwrap();
        for d in 0..=bd2.dim() {
            for s in bd2.nondeg_cells(d) {
                assert_eq!(r.apply(&s), s);
            }
        }
    }

    #[test]
    fn cylinder_point_to_point() {
        // A = Δ⁰ into Δ⁰: cone-like attachment with one new edge and vertex.
        let a = point();
        let x = point();
        let iota = SimplicialMap::to_point(a.clone());
        let _ = x;
        let cyl = cylinder_replacement(&iota).unwrap();
        assert_eq!(cyl.space.cell_count(0), 2);
        assert_eq!(cyl.space.cell_count(1), 1);
    }

    #[test]
    fn cylinder_two_points_to_one() {
        let two = from_facets(2, &[vec![0], vec![1]]).unwrap();
        let iota = SimplicialMap::to_point(two);
        let cyl = cylinder_replacement(&iota).unwrap();
        // Wedge shape: 3 vertices (two ends + image), 2 new edges.
        assert_eq!(cyl.space.cell_count(0), 3);
        assert_eq!(cyl.space.cell_count(1), 2);
        cyl.space.validate().unwrap();
    }

    #[test]
    fn suspension_of_identity_is_cylinder() {
        let bd2 = boundary(2);
        let id = SimplicialMap::identity(bd2.clone());
        let s = fibrewise_suspension(&id).unwrap();
        let prism = product(&standard_simplex(1), &bd2).unwrap();
        for d in 0..=s.space.dim().max(prism.space.dim()) {
            assert_eq!(s.space.cell_count(d), prism.space.cell_count(d));
        }
        s.project.validate().unwrap();
    }

    #[test]
    fn suspension_of_two_points_is_circle() {
        let two = from_facets(2, &[vec![0], vec![1]]).unwrap();
        let phi = SimplicialMap::to_point(two);
        let s = fibrewise_suspension(&phi).unwrap();
        assert_eq!(s.space.cell_count(0), 2);
        assert_eq!(s.space.cell_count(1), 2);
        assert_eq!(s.space.dim(), 1);
        s.space.validate().unwrap();
    }

    #[test]
    fn suspension_of_circle_has_euler_2() {
        let bd2 = boundary(2);
        let phi = SimplicialMap::to_point(bd2);
        let s = fibrewise_suspension(&phi).unwrap();
        assert_eq!(s.space.euler_characteristic(), 2);
        s.space.validate().unwrap();
        for sec in &s.end_sections {
            sec.validate().unwrap();
        }
        s.quotient.validate().unwrap();
    }

    #[test]
    fn pair_machinery() {
        let bd2 = boundary(2);
        let sub_cells: Vec<Simplex> = bd2
            .nondeg_cells(0)
            .filter(|s| bd2.vertices(s)[0] <= 1)
            .collect();
        let pair = SimplicialPair::closed(bd2.clone(), &sub_cells);
        assert_eq!(pair.relative_dim(), Some(1));
        let full = SimplicialPair::full_sub(bd2.clone());
        assert_eq!(full.relative_dim(), None);
        let empty = SimplicialPair::empty_sub(bd2);
        assert_eq!(empty.relative_dim(), Some(1));
    }

    #[test]
    fn all_simplices_counts() {
        // Degenerate simplices of the point: exactly one per dimension.
        let pt = point();
        for q in 0..5 {
            assert_eq!(pt.all_simplices(q).len(), 1);
        }
        // Δ¹ in dimension 2: one 2-simplex per word on the edge (2), plus
        // doubly-degenerate vertices (2).
        let d1 = standard_simplex(1);
        assert_eq!(d1.all_simplices(2).len(), 4);
    }
}
