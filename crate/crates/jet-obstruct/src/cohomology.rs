//! Cohomology of a model, with explicit representatives.
//!
//! A [`CohomologySubspace`] is a subspace of some `H^r` presented by
//! closed representative elements together with an echelon basis of the
//! coboundary space; membership queries reduce a class against both.
//! The canonicalization rule — reduce kernel vectors modulo the
//! coboundary echelon basis, then reduce the result again — pins the
//! representatives down uniquely, so tables are reproducible run to run.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{row_space_basis, FreeChoice, Matrix, Solver, Vector};
use crate::model::{DgaModel, ElementDegree};
use crate::monomial::Monomial;
use crate::scalar::{rat, Rational};
use num_traits::Zero;

/// Result of a coordinate query against a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Coordinates over the subspace representatives.
    In(Vector),
    NotInSpan,
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }
}

#[derive(Clone, Debug)]
pub struct CohomologySubspace {
    degree: usize,
    basis: Vec<Monomial>,
    representatives: Vec<Element>,
    relations: Vec<Element>,
    solver: Solver,
}

impl CohomologySubspace {
    /// Builds the span of `spanning` (closed elements of degree `r`)
    /// inside `H^r`, where `relations` is an echelon basis of the
    /// coboundaries in coordinate form.
    fn assemble(
        model: &DgaModel,
        r: usize,
        relation_vectors: Vec<Vector>,
        spanning_vectors: &[Vector],
    ) -> Self {
        let basis = model.basis_of_degree(r);
        let reduced: Vec<Vector> = spanning_vectors
            .iter()
            .map(|v| reduce_mod_echelon(v.clone(), &relation_vectors))
            .collect();
        let rep_vectors = row_space_basis(basis.len(), &reduced);
        let representatives: Vec<Element> =
            rep_vectors.iter().map(|v| model.from_coordinates(&basis, v)).collect();
        let relations: Vec<Element> =
            relation_vectors.iter().map(|v| model.from_coordinates(&basis, v)).collect();
        let columns: Vec<Vector> =
            rep_vectors.iter().chain(relation_vectors.iter()).cloned().collect();
        let solver = Solver::new(&Matrix::from_columns(basis.len(), &columns));
        CohomologySubspace { degree: r, basis, representatives, relations, solver }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    /// Closed elements whose classes form a basis of the subspace.
    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }

    /// Echelon basis of the coboundary space in this degree.
    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    /// Coordinates of `[z]` over the representatives, or `NotInSpan`.
    ///
    /// `z` must be a cocycle of the right degree; the zero element is
    /// the zero class in any degree.
    pub fn coordinates(&self, model: &DgaModel, z: &Element) -> Result<Membership> {
        model.expect_degree(z, self.degree)?;
        let dz = model.differential(z)?;
        if !dz.is_zero() {
            return Err(Error::NotACocycle { residual: model.format_element(&dz) });
        }
        let vec = model.coordinates(&self.basis, z)?;
        match self.solver.solve(&vec, FreeChoice::Zeros) {
            Some(x) => Ok(Membership::In(x[..self.representatives.len()].to_vec())),
            None => Ok(Membership::NotInSpan),
        }
    }

    pub fn contains(&self, model: &DgaModel, z: &Element) -> Result<bool> {
        Ok(self.coordinates(model, z)?.is_in())
    }

    /// The element `Σ cᵢ · repᵢ` for coordinates `c`.
    pub fn combination(&self, model: &DgaModel, c: &[Rational]) -> Element {
        assert_eq!(c.len(), self.representatives.len());
        let mut out = model.zero();
        for (coeff, rep) in c.iter().zip(&self.representatives) {
            out += &rep.scaled(coeff);
        }
        out
    }
}

fn reduce_mod_echelon(mut v: Vector, echelon: &[Vector]) -> Vector {
    for row in echelon {
        let pivot = row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
        if !v[pivot].is_zero() {
            let factor = v[pivot].clone();
            for (vi, ri) in v.iter_mut().zip(row.iter()) {
                *vi -= &factor * ri;
            }
        }
    }
    v
}

/// Matrix of `d : Ω^r → Ω^(r+1)` over the monomial bases.
fn differential_matrix(model: &DgaModel, r: usize) -> (Vec<Monomial>, Vec<Monomial>, Matrix) {
    let domain = model.basis_of_degree(r);
    let target = model.basis_of_degree(r + 1);
    let columns: Vec<Vector> = domain
        .iter()
        .map(|&m| {
            let e = model.element([(m, rat(1, 1))]);
            let de = model.differential(&e).expect("basis element is owned");
            model.coordinates(&target, &de).expect("d lands in the next degree")
        })
        .collect();
    let matrix = Matrix::from_columns(target.len(), &columns);
    (domain, target, matrix)
}

fn coboundary_vectors(model: &DgaModel, r: usize) -> Vec<Vector> {
    if r == 0 {
        return Vec::new();
    }
    let (_, _, d_prev) = differential_matrix(model, r - 1);
    let images: Vec<Vector> = (0..d_prev.cols()).map(|j| d_prev.column(j)).collect();
    row_space_basis(model.basis_of_degree(r).len(), &images)
}

/// `H^r` of the model with canonical representatives.
pub fn cohomology_basis(model: &DgaModel, r: usize) -> CohomologySubspace {
    let (_, _, d_r) = differential_matrix(model, r);
    let kernel = d_r.kernel_basis();
    let relations = coboundary_vectors(model, r);
    CohomologySubspace::assemble(model, r, relations, &kernel)
}

/// The subspace of `H^r` spanned by the classes of `spanning` (each must
/// be a cocycle of degree `r`).
pub fn subspace_from_classes(
    model: &DgaModel,
    r: usize,
    spanning: &[Element],
) -> Result<CohomologySubspace> {
    let basis = model.basis_of_degree(r);
    let mut vectors = Vec::with_capacity(spanning.len());
    for z in spanning {
        model.expect_degree(z, r)?;
        let dz = model.differential(z)?;
        if !dz.is_zero() {
            return Err(Error::NotACocycle { residual: model.format_element(&dz) });
        }
        vectors.push(model.coordinates(&basis, z)?);
    }
    let relations = coboundary_vectors(model, r);
    Ok(CohomologySubspace::assemble(model, r, relations, &vectors))
}

/// Kernel of the cup-product map `[z] ↦ [a ∧ z] : H^r → H^{r+|a|}`, as a
/// subspace of `H^r`.  For `a = 0` the map is zero and the kernel is all
/// of `H^r`.
pub fn cup_kernel(model: &DgaModel, a: &Element, r: usize) -> Result<CohomologySubspace> {
    let h_r = cohomology_basis(model, r);
    let ka = match model.degree(a) {
        ElementDegree::Zero => return Ok(h_r),
        ElementDegree::Homogeneous(k) => k,
        ElementDegree::Mixed => return Err(Error::NotHomogeneous { found: "mixed".into() }),
    };
    let da = model.differential(a)?;
    if !da.is_zero() {
        return Err(Error::NotACocycle { residual: model.format_element(&da) });
    }
    let h_target = cohomology_basis(model, r + ka);
    let mut columns = Vec::with_capacity(h_r.dimension());
    for rep in h_r.representatives() {
        let image = model.wedge(a, rep)?;
        match h_target.coordinates(model, &image)? {
            Membership::In(v) => columns.push(v),
            Membership::NotInSpan => unreachable!("cup product of cocycles is a cocycle class"),
        }
    }
    let matrix = Matrix::from_columns(h_target.dimension(), &columns);
    let combos: Vec<Element> = matrix
        .kernel_basis()
        .iter()
        .map(|c| h_r.combination(model, c))
        .collect();
    subspace_from_classes(model, r, &combos)
}

/// How to fill the free variables when picking a primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimitiveChoice {
    /// Canonical primitive: all free variables zero.
    Zeros,
    /// Reproducibly randomized free variables (small rationals).
    Seeded(u64),
}

/// Cached solver for `d : Ω^(r-1) → Ω^r`, for repeated exactness and
/// primitive queries in a fixed degree.
pub struct PrimitiveSolver {
    degree: usize,
    domain: Vec<Monomial>,
    target: Vec<Monomial>,
    solver: Solver,
}

impl PrimitiveSolver {
    pub fn new(model: &DgaModel, r: usize) -> Self {
        if r == 0 {
            let domain = Vec::new();
            let target = model.basis_of_degree(0);
            let solver = Solver::new(&Matrix::zero(target.len(), 0));
            return PrimitiveSolver { degree: 0, domain, target, solver };
        }
        let (domain, target, d_prev) = differential_matrix(model, r - 1);
        PrimitiveSolver { degree: r, domain, target, solver: Solver::new(&d_prev) }
    }

    pub fn is_exact(&self, model: &DgaModel, z: &Element) -> Result<bool> {
        model.expect_degree(z, self.degree)?;
        let vec = model.coordinates(&self.target, z)?;
        Ok(self.solver.consistent(&vec))
    }

    /// Some `β` with `dβ = z`, or `NoPrimitive`.
    pub fn find(&self, model: &DgaModel, z: &Element, choice: PrimitiveChoice) -> Result<Element> {
        model.expect_degree(z, self.degree)?;
        let vec = model.coordinates(&self.target, z)?;
        let solution = match choice {
            PrimitiveChoice::Zeros => self.solver.solve(&vec, FreeChoice::Zeros),
            PrimitiveChoice::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut supply = || rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                self.solver.solve(&vec, FreeChoice::Values(&mut supply))
            }
        };
        match solution {
            Some(x) => Ok(model.from_coordinates(&self.domain, &x)),
            None => Err(Error::NoPrimitive { element: model.format_element(z) }),
        }
    }
}

/// One-shot exactness test for a homogeneous element.
pub fn is_exact(model: &DgaModel, z: &Element) -> Result<bool> {
    match degree_of(model, z) {
        None => Ok(true),
        Some(r) => PrimitiveSolver::new(model, r).is_exact(model, z),
    }
}

/// One-shot primitive search.
pub fn find_primitive(model: &DgaModel, z: &Element, choice: PrimitiveChoice) -> Result<Element> {
    match degree_of(model, z) {
        None => Ok(model.zero()),
        Some(r) => PrimitiveSolver::new(model, r).find(model, z, choice),
    }
}

fn degree_of(model: &DgaModel, z: &Element) -> Option<usize> {
    model.degree(z).as_homogeneous()
}

/// Betti numbers `dim H^r` for `r = 0, …, top`.
pub fn betti_numbers(model: &DgaModel) -> Vec<usize> {
    (0..=model.top_degree()).map(|r| cohomology_basis(model, r).dimension()).collect()
}
