//! Cochains on finite simplicial sets and the cochain complexes of
//! pairs (X, A), with coefficients in a presented abelian group.
//!
//! A `Cochain` stores canonical coordinates on the nondegenerate cells of
//! one dimension; normalization (vanishing on degenerate simplices) is
//! baked into evaluation. The pair complex uses only the cells of X ∖ A,
//! which is exactly relative cochains.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{
    cohomology, CochainComplex, CohomologyGroup, FgAbelianGroup, GroupElement, GroupHom,
};
use crate::em::EmSimplex;
use crate::error::{Error, Result};
use crate::intlinalg::{solve_linear, IntMatrix};
use crate::simplicial::{Simplex, SimplicialPair, SsRef};

/// A π-valued cochain of fixed degree on a finite simplicial set.
#[derive(Clone)]
pub struct Cochain {
    pub space: SsRef,
    pub degree: usize,
    pub coeffs: FgAbelianGroup,
    values: HashMap<usize, Vec<BigInt>>,
}

impl Cochain {
    pub fn zero(space: SsRef, degree: usize, coeffs: FgAbelianGroup) -> Self {
        Cochain { space, degree, coeffs, values: HashMap::new() }
    }

    pub fn set(&mut self, cell: usize, coords: Vec<BigInt>) {
        let canon = self.coeffs.canonical_coords(&coords);
        if canon.iter().all(|c| c.is_zero()) {
            self.values.remove(&cell);
        } else {
            self.values.insert(cell, canon);
        }
    }

    pub fn cell_value(&self, cell: usize) -> Vec<BigInt> {
        self.values
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.coeffs.n_gens()])
    }

    /// Value on a possibly-degenerate simplex: zero unless nondegenerate
    /// of the cochain's degree.
    pub fn eval(&self, s: &Simplex) -> Vec<BigInt> {
        if !s.is_nondegenerate() || s.nd_dim != self.degree {
            return vec![BigInt::zero(); self.coeffs.n_gens()];
        }
        self.cell_value(s.idx)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree || self.coeffs != other.coeffs {
            return Err(Error::Usage("cochain shape mismatch".into()));
        }
        let mut out = self.clone();
        for (&cell, v) in &other.values {
            let mut cur = out.cell_value(cell);
            for (a, b) in cur.iter_mut().zip(v) {
                *a += b;
            }
            out.set(cell, cur);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Cochain {
        let mut out = Cochain::zero(self.space.clone(), self.degree, self.coeffs.clone());
        for (&cell, v) in &self.values {
            out.set(cell, v.iter().map(|c| -c).collect());
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    /// Simplicial coboundary on the whole space.
    pub fn coboundary(&self) -> Cochain {
        let mut out = Cochain::zero(self.space.clone(), self.degree + 1, self.coeffs.clone());
        let d = self.degree + 1;
        if d > self.space.dim() {
            return out;
        }
        for tau in self.space.nondeg_cells(d) {
            let mut acc = vec![BigInt::zero(); self.coeffs.n_gens()];
            for i in 0..=d {
                let f = self.space.face(&tau, i);
                let v = self.eval(&f);
                if i % 2 == 0 {
                    for (a, b) in acc.iter_mut().zip(&v) {
                        *a += b;
                    }
                } else {
                    for (a, b) in acc.iter_mut().zip(&v) {
                        *a -= b;
                    }
                }
            }
            out.set(tau.idx, acc);
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Does the cochain vanish on the subcomplex?
    pub fn vanishes_on(&self, pair: &SimplicialPair) -> bool {
        self.values.keys().all(|&cell| {
            !pair.contains(&Simplex::nondegenerate(self.degree, cell))
        })
    }

    pub fn map_coeffs(&self, hom: &GroupHom) -> Result<Cochain> {
        if *hom.source() != self.coeffs {
            return Err(Error::Usage("coefficient hom has the wrong source".into()));
        }
        let mut out = Cochain::zero(self.space.clone(), self.degree, hom.target().clone());
        for (&cell, v) in &self.values {
            out.set(cell, hom.matrix().mul_vec(v));
        }
        Ok(out)
    }

    /// The restriction of the cochain to one simplex of the space, as an
    /// EM-model simplex on Δ^(dim σ): value at face key φ is the value on
    /// the φ-indexed vertex-face of σ.
    pub fn em_simplex_at(&self, s: &Simplex) -> EmSimplex {
        let q = s.dim();
        let mut out = EmSimplex::zero(q, self.degree, self.coeffs.clone());
        if self.degree > q {
            return out;
        }
        for key in crate::em::face_keys(q, self.degree + 1) {
            let f = face_along(&self.space, s, &key);
            let v = self.eval(&f);
            out.set(key, v);
        }
        out
    }
}

/// The face of a simplex spanned by a subset of its vertex positions:
/// iterated faces dropping the complementary positions.
pub fn face_along(space: &SsRef, s: &Simplex, keep: &[u8]) -> Simplex {
    let mut cur = s.clone();
    for j in (0..=s.dim()).rev() {
        if !keep.contains(&(j as u8)) {
            cur = space.face(&cur, j);
        }
    }
    cur
}

/// The normalized cochain complex of a pair (X, A): modules are free
/// π-modules on the cells of X ∖ A.
pub struct PairComplex {
    pub pair: SimplicialPair,
    pub coeffs: FgAbelianGroup,
    /// Relative cell ids per dimension.
    cells: Vec<Vec<usize>>,
    pos: Vec<HashMap<usize, usize>>,
    pub complex: CochainComplex,
}

/// π^k presented with block-diagonal relations.
fn free_module_over(pi: &FgAbelianGroup, k: usize) -> FgAbelianGroup {
    let g = pi.n_gens();
    let r = pi.relations().cols();
    let mut rels = IntMatrix::zero(g * k, r * k);
    for b in 0..k {
        for i in 0..g {
            for j in 0..r {
                rels[(b * g + i, b * r + j)] = pi.relations()[(i, j)].clone();
            }
        }
    }
    FgAbelianGroup::new(g * k, rels).unwrap()
}

impl PairComplex {
    pub fn new(pair: SimplicialPair, coeffs: FgAbelianGroup) -> Result<Self> {
        let space = pair.space.clone();
        let top = space.dim();
        let g = coeffs.n_gens();
        let cells: Vec<Vec<usize>> = (0..=top)
            .map(|d| pair.relative_cells(d).into_iter().map(|s| s.idx).collect())
            .collect();
        let pos: Vec<HashMap<usize, usize>> = cells
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(p, &idx)| (idx, p)).collect())
            .collect();
        let modules: Vec<FgAbelianGroup> =
            cells.iter().map(|layer| free_module_over(&coeffs, layer.len())).collect();
        let mut diffs = Vec::new();
        for n in 0..top {
            let rows = g * cells[n + 1].len();
            let cols = g * cells[n].len();
            let mut m = IntMatrix::zero(rows, cols);
            for (ti, &tau_idx) in cells[n + 1].iter().enumerate() {
                let tau = Simplex::nondegenerate(n + 1, tau_idx);
                for i in 0..=n + 1 {
                    let f = space.face(&tau, i);
                    if !f.is_nondegenerate() || pair.contains(&f) {
                        continue;
                    }
                    let Some(&fp) = pos[n].get(&f.idx) else { continue };
                    let sign = if i % 2 == 0 { 1i64 } else { -1 };
                    for t in 0..g {
                        m[(ti * g + t, fp * g + t)] += BigInt::from(sign);
                    }
                }
            }
            diffs.push(GroupHom::new(modules[n].clone(), modules[n + 1].clone(), m)?);
        }
        let complex = CochainComplex::new(modules, diffs)?;
        Ok(PairComplex { pair, coeffs, cells, pos, complex })
    }

    pub fn absolute(space: SsRef, coeffs: FgAbelianGroup) -> Result<Self> {
        Self::new(SimplicialPair::empty_sub(space), coeffs)
    }

    pub fn cell_count(&self, degree: usize) -> usize {
        self.cells.get(degree).map_or(0, |l| l.len())
    }

    /// Coordinates of a relative cochain in the degree-n module.
    pub fn coords_of(&self, c: &Cochain) -> Result<Vec<BigInt>> {
        if c.coeffs != self.coeffs {
            return Err(Error::Usage("cochain has the wrong coefficients".into()));
        }
        if !c.vanishes_on(&self.pair) {
            return Err(Error::Usage("cochain is not relative (nonzero on the subcomplex)".into()));
        }
        let g = self.coeffs.n_gens();
        let layer = self.cells.get(c.degree).map(Vec::as_slice).unwrap_or(&[]);
        let mut out = vec![BigInt::zero(); g * layer.len()];
        for (p, &idx) in layer.iter().enumerate() {
            let v = c.cell_value(idx);
            out[p * g..(p + 1) * g].clone_from_slice(&v);
        }
        Ok(out)
    }

    pub fn cochain_from_coords(&self, degree: usize, coords: &[BigInt]) -> Cochain {
        let g = self.coeffs.n_gens();
        let mut out = Cochain::zero(self.pair.space.clone(), degree, self.coeffs.clone());
        if let Some(layer) = self.cells.get(degree) {
            for (p, &idx) in layer.iter().enumerate() {
                out.set(idx, coords[p * g..(p + 1) * g].to_vec());
            }
        }
        out
    }

    pub fn cohomology(&self, degree: usize) -> CohomologyGroup {
        cohomology(&self.complex, degree)
    }

    /// The class of a relative cocycle in H^degree(X, A; π).
    pub fn class_of(&self, h: &CohomologyGroup, c: &Cochain) -> Result<GroupElement> {
        if !c.is_cocycle() {
            return Err(Error::Usage("not a cocycle".into()));
        }
        h.class_of(&self.coords_of(c)?)
    }

    /// A relative cocycle representing a class.
    pub fn rep_of(&self, h: &CohomologyGroup, class: &GroupElement) -> Result<Cochain> {
        Ok(self.cochain_from_coords(h.degree(), &h.cocycle_rep(class)?))
    }

    /// Solves δw = z with w a relative cochain of degree z.degree - 1.
    pub fn solve_relative_coboundary(&self, z: &Cochain) -> Result<Option<Cochain>> {
        let n = z
            .degree
            .checked_sub(1)
            .ok_or_else(|| Error::Usage("cannot cobound a 0-cochain".into()))?;
        let zc = self.coords_of(z)?;
        if zc.iter().all(|c| c.is_zero()) {
            return Ok(Some(Cochain::zero(self.pair.space.clone(), n, self.coeffs.clone())));
        }
        let Some(d) = self.complex.differential(n) else {
            return Ok(None);
        };
        // Solve modulo the relations of the degree-(n+1) module.
        let system = d.matrix().hstack(d.target().relations());
        let Some(sol) = solve_linear(&system, &zc)? else {
            return Ok(None);
        };
        let w = self.cochain_from_coords(n, &sol.particular[..d.matrix().cols()]);
        debug_assert!(w.coboundary().sub(z).unwrap().is_zero());
        Ok(Some(w))
    }
}

/// The class in H^n(X, A; π) of a map X → B×K(π,n) given by a relative
/// cocycle assignment; rejects non-cocycles and non-relative input.
pub fn classify_map_to_k(
    complex: &PairComplex,
    h: &CohomologyGroup,
    assignment: &Cochain,
) -> Result<GroupElement> {
    complex.class_of(h, assignment)
}
