//! Finitely generated abelian groups presented by relation matrices,
//! homomorphisms between them, and cohomology of finite cochain complexes.
//!
//! Groups are always carried as presentations, never silently replaced by
//! their isomorphism type: every downstream algorithm needs the structure
//! maps. Reporting invariant factors is a formatting step.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{smith_normal_form_full, solve_with_snf, IntMatrix, SnfFull};

#[derive(Debug)]
struct GroupData {
    n_gens: usize,
    /// Columns are relators in ℤ^n_gens.
    relations: IntMatrix,
    snf: SnfFull,
}

/// A finitely generated abelian group `ℤ^n / colspan(relations)`.
///
/// Cheap to clone (shared presentation). Two handles are compatible when
/// they present literally the same group: same generator count and same
/// relation matrix.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.n_gens == other.data.n_gens
                && self.data.relations == other.data.relations)
    }
}
impl Eq for FgAbelianGroup {}

impl FgAbelianGroup {
    pub fn new(n_gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != n_gens {
            return Err(Error::Usage(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                n_gens
            )));
        }
        let snf = smith_normal_form_full(&relations);
        Ok(FgAbelianGroup { data: Arc::new(GroupData { n_gens, relations, snf }) })
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zero(n, 0)).unwrap()
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[vec![order as i64]])).unwrap()
    }

    /// ℤ^free ⊕ ℤ/t₁ ⊕ … presented in the obvious way.
    pub fn with_torsion(free_rank: usize, torsion: &[u64]) -> Self {
        let n = free_rank + torsion.len();
        let mut rel = IntMatrix::zero(n, torsion.len());
        for (j, &t) in torsion.iter().enumerate() {
            rel[(free_rank + j, j)] = BigInt::from(t);
        }
        Self::new(n, rel).unwrap()
    }

    pub fn n_gens(&self) -> usize {
        self.data.n_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.data.relations
    }

    pub fn relation_snf(&self) -> &SnfFull {
        &self.data.snf
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { owner: self.clone(), coords: vec![BigInt::zero(); self.n_gens()] }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        assert!(i < self.n_gens(), "generator index out of range");
        let mut coords = vec![BigInt::zero(); self.n_gens()];
        coords[i] = BigInt::one();
        GroupElement { owner: self.clone(), coords }
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.n_gens() {
            return Err(Error::Usage(format!(
                "element has {} coordinates, group has {} generators",
                coords.len(),
                self.n_gens()
            )));
        }
        Ok(GroupElement { owner: self.clone(), coords })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Canonical coordinates of `coords` modulo the relation lattice.
    pub fn canonical_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let snf = &self.data.snf;
        let mut w = snf.u_inv.mul_vec(coords);
        for i in 0..snf.rank {
            let s = &snf.s[(i, i)];
            let r = &w[i] % s;
            w[i] = if r.is_negative() { r + s } else { r };
        }
        snf.u.mul_vec(&w)
    }

    /// Does `coords` lie in the relation lattice (i.e. represent zero)?
    pub fn coords_are_zero(&self, coords: &[BigInt]) -> bool {
        let snf = &self.data.snf;
        let w = snf.u_inv.mul_vec(coords);
        for (i, wi) in w.iter().enumerate() {
            if i < snf.rank {
                if !(wi % &snf.s[(i, i)]).is_zero() {
                    return false;
                }
            } else if !wi.is_zero() {
                return false;
            }
        }
        true
    }

    /// Number of elements, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let snf = &self.data.snf;
        if snf.rank < self.n_gens() {
            return None;
        }
        let mut o = BigInt::one();
        for i in 0..snf.rank {
            o *= &snf.s[(i, i)];
        }
        Some(o)
    }

    pub fn is_trivial(&self) -> bool {
        self.order().map_or(false, |o| o.is_one())
    }

    /// Invariant factors > 1 followed by the free rank: the data behind
    /// the `Z/t1 + ... + Z^r` display form.
    pub fn invariant_factors(&self) -> (Vec<BigInt>, usize) {
        let snf = &self.data.snf;
        let torsion = (0..snf.rank)
            .map(|i| snf.s[(i, i)].clone())
            .filter(|s| !s.is_one())
            .collect();
        (torsion, self.n_gens() - snf.rank)
    }

    /// "0", "Z", "Z/2 + Z", ... from the invariant factors.
    pub fn isomorphism_display(&self) -> String {
        let (torsion, free) = self.invariant_factors();
        let mut parts: Vec<String> = torsion.iter().map(|t| format!("Z/{t}")).collect();
        match free {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// All elements of a finite group, in a deterministic order.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        let snf = &self.data.snf;
        if snf.rank < self.n_gens() {
            return Err(Error::Usage("cannot enumerate an infinite group".into()));
        }
        let mut out = Vec::new();
        let sizes: Vec<BigInt> = (0..snf.rank).map(|i| snf.s[(i, i)].clone()).collect();
        let mut w = vec![BigInt::zero(); snf.rank];
        loop {
            let coords = snf.u.mul_vec(&w);
            out.push(GroupElement { owner: self.clone(), coords: self.canonical_coords(&coords) });
            let mut i = 0;
            loop {
                if i == snf.rank {
                    return Ok(out);
                }
                w[i] += 1;
                if w[i] < sizes[i] {
                    break;
                }
                w[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

/// An element of an [`FgAbelianGroup`], carrying its owner handle.
/// Cross-group arithmetic is rejected rather than coerced.
#[derive(Clone, Debug)]
pub struct GroupElement {
    owner: FgAbelianGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn owner(&self) -> &FgAbelianGroup {
        &self.owner
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn canonicalize(&self) -> GroupElement {
        GroupElement {
            owner: self.owner.clone(),
            coords: self.owner.canonical_coords(&self.coords),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.owner.coords_are_zero(&self.coords)
    }

    fn check_owner(&self, other: &GroupElement) -> Result<()> {
        if self.owner != other.owner {
            return Err(Error::Usage("elements of different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_owner(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(GroupElement { owner: self.owner.clone(), coords })
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_owner(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(GroupElement { owner: self.owner.clone(), coords })
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement { owner: self.owner.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> GroupElement {
        GroupElement {
            owner: self.owner.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner
            && self.owner.coords_are_zero(
                &self
                    .coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            )
    }
}
impl Eq for GroupElement {}

/// Generators of `{ x : M x ∈ colspan(lattice) }`, the preimage of a
/// lattice under an integer matrix. This single primitive carries all the
/// kernel/subquotient presentations below.
pub fn lattice_preimage(m: &IntMatrix, lattice: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows(), lattice.rows(), "lattice lives in the wrong ambient space");
    let mut neg_l = lattice.clone();
    for i in 0..neg_l.rows() {
        for j in 0..neg_l.cols() {
            let e = &mut neg_l[(i, j)];
            *e = -std::mem::take(e);
        }
    }
    let stacked = m.hstack(&neg_l);
    let snf = smith_normal_form_full(&stacked);
    // Kernel basis of [M | -L], projected to the first block.
    let cols: Vec<Vec<BigInt>> = (snf.rank..stacked.cols())
        .map(|j| {
            let full = snf.v_inv.column(j);
            full[..m.cols()].to_vec()
        })
        .collect();
    IntMatrix::from_columns(m.cols(), &cols)
}

/// A homomorphism of presented groups, given by a matrix on generator
/// coordinates. Construction checks that the matrix maps the source
/// relation lattice into the target relation lattice.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.n_gens() || matrix.cols() != source.n_gens() {
            return Err(Error::Usage(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.n_gens(),
                source.n_gens()
            )));
        }
        for j in 0..source.relations().cols() {
            let image = matrix.mul_vec(&source.relations().column(j));
            if !target.coords_are_zero(&image) {
                return Err(Error::Usage(
                    "matrix does not map source relations into target relations".into(),
                ));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: FgAbelianGroup, target: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::zero(target.n_gens(), source.n_gens());
        GroupHom { source, target, matrix }
    }

    pub fn identity(group: FgAbelianGroup) -> Self {
        let matrix = IntMatrix::identity(group.n_gens());
        GroupHom { source: group.clone(), target: group, matrix }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if *x.owner() != self.source {
            return Err(Error::Usage("element does not belong to the hom's source".into()));
        }
        self.target.element(self.matrix.mul_vec(x.coords()))
    }

    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::Usage("homs are not composable".into()));
        }
        GroupHom::new(inner.source.clone(), self.target.clone(), self.matrix.mul(&inner.matrix))
    }

    pub fn is_zero_hom(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.coords_are_zero(&self.matrix.column(j)))
    }
}

/// Kernel of a hom: a presented group plus its inclusion into the source.
pub struct KernelData {
    pub group: FgAbelianGroup,
    pub include: GroupHom,
}

/// Image of a hom: a presented group plus its inclusion into the target.
pub struct ImageData {
    pub group: FgAbelianGroup,
    pub include: GroupHom,
}

/// Cokernel of a hom: a presented group plus the projection from the target.
pub struct CokernelData {
    pub group: FgAbelianGroup,
    pub project: GroupHom,
}

pub fn hom_kernel(f: &GroupHom) -> KernelData {
    // K = { x : f(x) ∈ target relations }, presented by generators G with
    // relations { c : G c ∈ source relations }.
    let gens = lattice_preimage(f.matrix(), f.target().relations());
    let rels = lattice_preimage(&gens, f.source().relations());
    let group = FgAbelianGroup::new(gens.cols(), rels).unwrap();
    let include = GroupHom::new(group.clone(), f.source().clone(), gens).unwrap();
    KernelData { group, include }
}

pub fn hom_image(f: &GroupHom) -> ImageData {
    let rels = lattice_preimage(f.matrix(), f.target().relations());
    let group = FgAbelianGroup::new(f.source().n_gens(), rels).unwrap();
    let include = GroupHom::new(group.clone(), f.target().clone(), f.matrix().clone()).unwrap();
    ImageData { group, include }
}

pub fn hom_cokernel(f: &GroupHom) -> CokernelData {
    let rels = f.target().relations().hstack(f.matrix());
    let group = FgAbelianGroup::new(f.target().n_gens(), rels).unwrap();
    let project =
        GroupHom::new(f.target().clone(), group.clone(), IntMatrix::identity(f.target().n_gens()))
            .unwrap();
    CokernelData { group, project }
}

/// A finite cochain complex of presented groups,
/// `C^0 -> C^1 -> ... -> C^top` with d∘d = 0.
pub struct CochainComplex {
    modules: Vec<FgAbelianGroup>,
    diffs: Vec<GroupHom>,
}

impl CochainComplex {
    pub fn new(modules: Vec<FgAbelianGroup>, diffs: Vec<GroupHom>) -> Result<Self> {
        if !modules.is_empty() && diffs.len() + 1 != modules.len() {
            return Err(Error::Usage(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if *d.source() != modules[i] || *d.target() != modules[i + 1] {
                return Err(Error::Usage(format!("differential {i} connects the wrong modules")));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[i + 1].compose(&diffs[i])?;
            if !dd.is_zero_hom() {
                return Err(Error::Usage(format!("d∘d != 0 between degrees {i} and {}", i + 2)));
            }
        }
        Ok(CochainComplex { modules, diffs })
    }

    pub fn module(&self, degree: usize) -> Option<&FgAbelianGroup> {
        self.modules.get(degree)
    }

    pub fn differential(&self, degree: usize) -> Option<&GroupHom> {
        self.diffs.get(degree)
    }

    pub fn top_degree(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }
}

/// `H^n` of a complex, presented, with passage between cocycles and classes.
pub struct CohomologyGroup {
    pub group: FgAbelianGroup,
    degree: usize,
    /// Columns are the cocycle representatives of the group's generators,
    /// as coordinate vectors in C^n.
    cocycle_gens: IntMatrix,
    module: FgAbelianGroup,
    next_module_relations: IntMatrix,
    diff: Option<IntMatrix>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cocycle coordinates in C^n of a generator of H^n.
    pub fn generator_cocycle(&self, i: usize) -> Vec<BigInt> {
        self.cocycle_gens.column(i)
    }

    /// The class of a cocycle. Rejects non-cocycles.
    pub fn class_of(&self, cocycle: &[BigInt]) -> Result<GroupElement> {
        if cocycle.len() != self.module.n_gens() {
            return Err(Error::Usage("cocycle has wrong length".into()));
        }
        if let Some(d) = &self.diff {
            let dz = d.mul_vec(cocycle);
            let next_rels = smith_normal_form_full(&self.next_module_relations);
            let w = next_rels.u_inv.mul_vec(&dz);
            for (i, wi) in w.iter().enumerate() {
                let ok = if i < next_rels.rank {
                    (wi % &next_rels.s[(i, i)]).is_zero()
                } else {
                    wi.is_zero()
                };
                if !ok {
                    return Err(Error::Usage("not a cocycle".into()));
                }
            }
        }
        // Express the cocycle in terms of the kernel generators, modulo the
        // module's own relations.
        let system = self.cocycle_gens.hstack(self.module.relations());
        let snf = smith_normal_form_full(&system);
        let sol = solve_with_snf(&snf, system.cols(), cocycle)
            .ok_or_else(|| Error::Internal("cocycle not in kernel lattice".into()))?;
        let coords = sol.particular[..self.cocycle_gens.cols()].to_vec();
        self.group.element(coords)
    }

    /// A cocycle representing the given class.
    pub fn cocycle_rep(&self, class: &GroupElement) -> Result<Vec<BigInt>> {
        if *class.owner() != self.group {
            return Err(Error::Usage("class from a different cohomology group".into()));
        }
        Ok(self.cocycle_gens.mul_vec(class.coords()))
    }
}

/// `H^degree` = ker d^degree / im d^(degree-1), with a lift map from
/// cocycles to classes. Degrees outside the complex give the trivial group.
pub fn cohomology(complex: &CochainComplex, degree: usize) -> CohomologyGroup {
    let Some(module) = complex.module(degree) else {
        return CohomologyGroup {
            group: FgAbelianGroup::trivial(),
            degree,
            cocycle_gens: IntMatrix::zero(0, 0),
            module: FgAbelianGroup::trivial(),
            next_module_relations: IntMatrix::zero(0, 0),
            diff: None,
        };
    };
    // Kernel lattice of d^degree (all of C^n when there is no outgoing d).
    let kernel_gens = match complex.differential(degree) {
        Some(d) => lattice_preimage(d.matrix(), d.target().relations()),
        None => IntMatrix::identity(module.n_gens()),
    };
    // Relations: combinations landing in im d^(degree-1) + relations of C^n.
    let boundary_lattice = match degree.checked_sub(1).and_then(|d| complex.differential(d)) {
        Some(dprev) => module.relations().hstack(dprev.matrix()),
        None => module.relations().clone(),
    };
    let rels = lattice_preimage(&kernel_gens, &boundary_lattice);
    let group = FgAbelianGroup::new(kernel_gens.cols(), rels).unwrap();
    let (next_rels, diff) = match complex.differential(degree) {
        Some(d) => (d.target().relations().clone(), Some(d.matrix().clone())),
        None => (IntMatrix::zero(0, 0), None),
    };
    CohomologyGroup {
        group,
        degree,
        cocycle_gens: kernel_gens,
        module: module.clone(),
        next_module_relations: next_rels,
        diff,
    }
}
