//! Ring presentations attached to a semiprojective toric manifold:
//! classical cohomology, quantum cohomology, symplectic cohomology via
//! two independent routes, the Landau-Ginzburg Jacobian ring, and the
//! circle-equivariant quantum and symplectic presentations.

use crate::groebner::{
    buchberger, multiplication_matrix, normal_form, saturate, standard_monomials, GroebnerBasis,
    Monomial, MonomialOrder, Poly, QuotientBasis, Ring,
};
use crate::matrix::{hermite_normal_form, kernel_of_power, rational_solve, IntMatrix};
use crate::polyhedral::{
    batyrev_rhs, polytope_vertices, primitive_subsets, rotation_monomial, support_membership,
    validate_fan, Cocharacter, Fan, Membership, MomentData, PolyhedralError,
};
use crate::scalar::{EqScalar, Field, NovikovScalar, TPower, URat};
use num::{BigRational, One, Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PresentationError {
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error("NonPositiveOmega: primitive subset {subset:?} has omega = {omega}")]
    NonPositiveOmega { subset: Vec<usize>, omega: i64 },
    #[error("NotFanoOrCY: quantum presentations need a Fano or Calabi-Yau input")]
    NotFanoOrCY,
    #[error("GradingInhomogeneous: generator {generator} is not homogeneous")]
    GradingInhomogeneous { generator: String },
    #[error("NotContracting: the cocharacter is not in the support interior")]
    NotContracting,
    #[error("CompactFan: symplectic cohomology is not defined for complete fans")]
    CompactFan,
    #[error("RouteMismatch: eigenspace route gives {eigenspace}, saturation route gives {saturation}")]
    RouteMismatch { eigenspace: usize, saturation: usize },
    #[error("InfiniteQuotient: expected a finite-dimensional quotient")]
    InfiniteQuotient,
    #[error("QuantumClassicalMismatch: quantum dims {quantum:?} != classical dims {classical:?}")]
    QuantumClassicalMismatch {
        quantum: Vec<(usize, usize)>,
        classical: Vec<(usize, usize)>,
    },
    #[error("SpecializationPole: a coefficient has a pole at u = 0")]
    SpecializationPole,
}

/// Fano / Calabi-Yau / other classification of the moment data.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometryKind {
    FanoMonotone {
        t: BigRational,
        xi: Vec<BigRational>,
    },
    CalabiYau {
        xi: Vec<BigRational>,
    },
    Other,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryClass {
    pub kind: GeometryKind,
    pub compact: bool,
}

impl GeometryClass {
    pub fn is_fano(&self) -> bool {
        matches!(self.kind, GeometryKind::FanoMonotone { .. })
    }
    pub fn is_cy(&self) -> bool {
        matches!(self.kind, GeometryKind::CalabiYau { .. })
    }
}

/// Provenance of a presentation generator.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorTag {
    /// Linear relation for the character xi.
    Linear { xi: Vec<i64> },
    /// Classical Stanley-Reisner monomial of a primitive subset.
    ClassicalSR { subset: Vec<usize> },
    /// Quantum Stanley-Reisner relation of a primitive subset.
    QuantumSR {
        subset: Vec<usize>,
        rhs: Vec<(usize, i64)>,
        omega: i64,
    },
    /// Identification of the equivariant parameter.
    UIdentification { xi0: Vec<i64>, pairing: i64 },
    /// Derived by localization (saturation).
    Localized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaggedGenerator<F: Field> {
    pub tag: GeneratorTag,
    pub poly: Poly<F>,
}

/// A presentation of a quotient ring: tagged generators, the reduced
/// Gröbner basis they generate, the standard-monomial basis, and the
/// dimensions graded by cohomological degree (|x_i| = 2).
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation<F: Field> {
    pub ring: Arc<Ring>,
    pub generators: Vec<TaggedGenerator<F>>,
    pub groebner: GroebnerBasis<F>,
    pub quotient: QuotientBasis,
    pub graded_dims: Vec<(usize, usize)>,
}

impl<F: Field> IdealPresentation<F> {
    fn build(ring: &Arc<Ring>, generators: Vec<TaggedGenerator<F>>) -> Self {
        let polys: Vec<Poly<F>> = generators.iter().map(|g| g.poly.clone()).collect();
        let groebner = buchberger(&polys, ring);
        let quotient = standard_monomials(&groebner);
        let graded_dims = graded_dims(&quotient);
        IdealPresentation {
            ring: ring.clone(),
            generators,
            groebner,
            quotient,
            graded_dims,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.quotient.dim()
    }
}

fn graded_dims(q: &QuotientBasis) -> Vec<(usize, usize)> {
    let QuotientBasis::Finite(basis) = q else {
        return vec![];
    };
    let mut dims: Vec<(usize, usize)> = vec![];
    for m in basis {
        let deg = 2 * crate::groebner::monomial_degree(m) as usize;
        match dims.iter_mut().find(|(d, _)| *d == deg) {
            Some((_, c)) => *c += 1,
            None => dims.push((deg, 1)),
        }
    }
    dims.sort();
    dims
}

/// Solve the monotonicity and Calabi-Yau systems exactly.
///
/// Calabi-Yau takes precedence: when <xi, e_i> = 1 is solvable the first
/// Chern class vanishes and the monotone system cannot pin t.
pub fn classify_geometry(md: &MomentData) -> Result<GeometryClass, PresentationError> {
    let fan = &md.fan;
    let report = validate_fan(fan)?;
    let rows: Vec<Vec<BigRational>> = fan
        .rays
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let ones: Vec<BigRational> = vec![<BigRational as One>::one(); fan.rays.len()];
    if let Some((xi, _)) = rational_solve(&rows, &ones) {
        return Ok(GeometryClass {
            kind: GeometryKind::CalabiYau { xi },
            compact: report.complete,
        });
    }
    // lambda_i = -t + <xi, e_i>: unknowns (xi, t).
    let aug: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.push(BigRational::from_integer((-1).into()));
            row
        })
        .collect();
    let lam: Vec<BigRational> = md
        .lambda
        .iter()
        .map(|&l| BigRational::from_integer(l.into()))
        .collect();
    if let Some((sol, kernel)) = rational_solve(&aug, &lam) {
        // The CY check failed, so no kernel direction moves t.
        debug_assert!(kernel.iter().all(|k| Zero::is_zero(&k[fan.rank])));
        let t = sol[fan.rank].clone();
        if t.is_positive() {
            let xi = sol[..fan.rank].to_vec();
            return Ok(GeometryClass {
                kind: GeometryKind::FanoMonotone { t, xi },
                compact: report.complete,
            });
        }
    }
    Ok(GeometryClass {
        kind: GeometryKind::Other,
        compact: report.complete,
    })
}

fn linear_generators<F: Field>(fan: &Fan, ring: &Arc<Ring>) -> Vec<TaggedGenerator<F>> {
    let r = fan.rays.len();
    (0..fan.rank)
        .map(|k| {
            let mut terms = vec![];
            for i in 0..r {
                let c = fan.rays[i][k];
                if c == 0 {
                    continue;
                }
                let mut m = vec![0u32; ring.arity];
                m[i] = 1;
                terms.push((m, F::from_int(c)));
            }
            let mut xi = vec![0i64; fan.rank];
            xi[k] = 1;
            TaggedGenerator {
                tag: GeneratorTag::Linear { xi },
                poly: Poly::from_terms(ring, terms),
            }
        })
        .collect()
}

fn classical_sr_generators<F: Field>(fan: &Fan, ring: &Arc<Ring>) -> Vec<TaggedGenerator<F>> {
    primitive_subsets(fan)
        .into_iter()
        .map(|subset| {
            let mut m = vec![0u32; ring.arity];
            for &i in &subset {
                m[i] = 1;
            }
            TaggedGenerator {
                tag: GeneratorTag::ClassicalSR { subset },
                poly: Poly::monomial(ring, m),
            }
        })
        .collect()
}

fn quantum_sr_generators<F: TPower>(
    md: &MomentData,
    ring: &Arc<Ring>,
) -> Result<Vec<TaggedGenerator<F>>, PresentationError> {
    let fan = &md.fan;
    let mut out = vec![];
    for subset in primitive_subsets(fan) {
        let rhs = batyrev_rhs(fan, &subset)?;
        let omega: i64 = -subset.iter().map(|&i| md.lambda[i]).sum::<i64>()
            + rhs.iter().map(|&(j, c)| c * md.lambda[j]).sum::<i64>();
        if omega <= 0 {
            return Err(PresentationError::NonPositiveOmega { subset, omega });
        }
        let mut lhs = vec![0u32; ring.arity];
        for &i in &subset {
            lhs[i] = 1;
        }
        let mut rhs_mono = vec![0u32; ring.arity];
        for &(j, c) in &rhs {
            rhs_mono[j] = u32::try_from(c).expect("positive coefficient");
        }
        let poly = Poly::from_terms(
            ring,
            vec![
                (lhs, F::one()),
                (rhs_mono, F::t_power(omega).neg()),
            ],
        );
        out.push(TaggedGenerator {
            tag: GeneratorTag::QuantumSR {
                subset,
                rhs,
                omega,
            },
            poly,
        });
    }
    Ok(out)
}

/// The classical cohomology presentation: linear relations plus the
/// Stanley-Reisner monomials of the primitive subsets.
pub fn classical_cohomology(
    fan: &Fan,
) -> Result<IdealPresentation<NovikovScalar>, PresentationError> {
    let ring = Ring::xvars(fan.rays.len());
    let mut gens = linear_generators(fan, &ring);
    gens.extend(classical_sr_generators(fan, &ring));
    Ok(IdealPresentation::build(&ring, gens))
}

/// A presentation after substituting away variables that the linear
/// relations solve for (always the highest-indexed ones).
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedPresentation<F: Field> {
    pub ring: Arc<Ring>,
    /// Original indices of the kept variables.
    pub kept: Vec<usize>,
    /// For each eliminated original variable, its image polynomial.
    pub substitutions: Vec<(usize, Poly<F>)>,
    pub generators: Vec<TaggedGenerator<F>>,
    pub groebner: GroebnerBasis<F>,
    pub quotient: QuotientBasis,
}

/// Eliminate variables using the Linear-tagged generators; pivots are
/// chosen on the highest-indexed variables so low indices survive.
pub fn eliminate_linear<F: Field>(
    full_ring: &Arc<Ring>,
    generators: &[TaggedGenerator<F>],
) -> ReducedPresentation<F> {
    let r = full_ring.arity;
    let mut rows: Vec<Vec<BigRational>> = vec![];
    for g in generators {
        if let GeneratorTag::Linear { .. } = g.tag {
            let mut row = vec![<BigRational as Zero>::zero(); r];
            for (m, c) in g.poly.terms() {
                let i = m.iter().position(|&e| e == 1).expect("linear monomial");
                // Linear generators have integer coefficients.
                row[i] = as_rational(c);
            }
            rows.push(row);
        }
    }
    // RREF with pivots scanned from the highest column down.
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut used = vec![false; rows.len()];
    for col in (0..r).rev() {
        let p = (0..rows.len()).find(|&i| !used[i] && !Zero::is_zero(&rows[i][col]));
        let Some(p) = p else { continue };
        used[p] = true;
        let inv = rows[p][col].recip();
        for e in rows[p].iter_mut() {
            *e = &*e * &inv;
        }
        for i in 0..rows.len() {
            if i == p || Zero::is_zero(&rows[i][col]) {
                continue;
            }
            let k = rows[i][col].clone();
            for c in 0..r {
                let v = &rows[i][c] - &k * &rows[p][c];
                rows[i][c] = v;
            }
        }
        pivots.push((p, col));
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let kept: Vec<usize> = (0..r).filter(|c| !pivot_cols.contains(c)).collect();
    let names = kept.iter().map(|&i| full_ring.names[i].clone()).collect();
    let ring = Ring::new(kept.len(), names, full_ring.order.clone());
    // Images of the original variables in the reduced ring.
    let mut images: Vec<Poly<F>> = vec![Poly::zero(&ring); r];
    for (new_i, &old_i) in kept.iter().enumerate() {
        images[old_i] = Poly::var(&ring, new_i);
    }
    let mut substitutions = vec![];
    for &(row, col) in &pivots {
        let mut terms = vec![];
        for (new_i, &old_i) in kept.iter().enumerate() {
            let q = &rows[row][old_i];
            if Zero::is_zero(q) {
                continue;
            }
            let mut m = vec![0u32; ring.arity];
            m[new_i] = 1;
            terms.push((m, F::from_rat(&(-q.clone()))));
        }
        let img = Poly::from_terms(&ring, terms);
        images[col] = img.clone();
        substitutions.push((col, img));
    }
    substitutions.sort_by_key(|&(c, _)| c);
    let mut reduced_gens = vec![];
    for g in generators {
        if matches!(g.tag, GeneratorTag::Linear { .. }) {
            continue;
        }
        let poly = g.poly.substitute(&ring, &images, &|c: &F| c.clone());
        if poly.is_zero() {
            continue;
        }
        reduced_gens.push(TaggedGenerator {
            tag: g.tag.clone(),
            poly,
        });
    }
    let polys: Vec<Poly<F>> = reduced_gens.iter().map(|g| g.poly.clone()).collect();
    let groebner = buchberger(&polys, &ring);
    let quotient = standard_monomials(&groebner);
    ReducedPresentation {
        ring,
        kept,
        substitutions,
        generators: reduced_gens,
        groebner,
        quotient,
    }
}

fn as_rational<F: Field>(c: &F) -> BigRational {
    c.as_rat().expect("linear relations have rational coefficients")
}

/// Quantum cohomology presentation together with its geometry class and
/// the reduced (linear-eliminated) form.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumCohomology {
    pub geometry: GeometryClass,
    pub presentation: IdealPresentation<NovikovScalar>,
    pub reduced: ReducedPresentation<NovikovScalar>,
    pub classical_dims: Vec<(usize, usize)>,
}

impl QuantumCohomology {
    pub fn dim(&self) -> usize {
        self.presentation.dim().expect("quantum quotient is finite")
    }
}

/// Linear relations plus quantum Stanley-Reisner relations. Requires a
/// Fano or Calabi-Yau input; validates omega-positivity, the grading in
/// the normalized Fano case, and agreement with the classical dimensions.
pub fn quantum_cohomology(md: &MomentData) -> Result<QuantumCohomology, PresentationError> {
    let fan = &md.fan;
    let geometry = classify_geometry(md)?;
    if !geometry.is_fano() && !geometry.is_cy() {
        return Err(PresentationError::NotFanoOrCY);
    }
    let ring = Ring::xvars(fan.rays.len());
    let mut gens: Vec<TaggedGenerator<NovikovScalar>> = linear_generators(fan, &ring);
    gens.extend(quantum_sr_generators(md, &ring)?);
    let presentation = IdealPresentation::build(&ring, gens);
    if presentation.dim().is_none() {
        return Err(PresentationError::InfiniteQuotient);
    }
    // Normalized Fano inputs carry a Z-grading with |x_i| = |T| = 2.
    if geometry.is_fano() && md.lambda.iter().all(|&l| l == -1) {
        for g in &presentation.generators {
            if !is_graded_homogeneous(&g.poly) {
                return Err(PresentationError::GradingInhomogeneous {
                    generator: format!("{}", g.poly),
                });
            }
        }
    }
    let classical = classical_cohomology(fan)?;
    if classical.graded_dims != presentation.graded_dims {
        return Err(PresentationError::QuantumClassicalMismatch {
            quantum: presentation.graded_dims.clone(),
            classical: classical.graded_dims.clone(),
        });
    }
    let reduced = eliminate_linear(&ring, &presentation.generators);
    Ok(QuantumCohomology {
        geometry,
        presentation,
        reduced,
        classical_dims: classical.graded_dims,
    })
}

fn is_graded_homogeneous(p: &Poly<NovikovScalar>) -> bool {
    let mut degree: Option<i64> = None;
    for (m, c) in p.terms() {
        let Some(tk) = c.t_monomial_degree() else {
            return false;
        };
        let d = 2 * crate::groebner::monomial_degree(m) as i64 + 2 * tk;
        match degree {
            None => degree = Some(d),
            Some(existing) if existing == d => {}
            _ => return false,
        }
    }
    true
}

/// Result of the two-route symplectic cohomology computation.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticCohomology {
    pub dim: usize,
    pub route_agreement: bool,
    /// dim ker of the full power of quantum multiplication by the
    /// rotation monomial (the generalized 0-eigenspace).
    pub eigenspace_dim: usize,
    pub qh_dim: usize,
    /// Reduced Laurent presentation from the saturation route.
    pub presentation: ReducedPresentation<NovikovScalar>,
}

/// Route A: quotient dimension minus the generalized 0-eigenspace of
/// multiplication by the rotation monomial. Route B: saturation of the
/// quantum ideal by the product of all variables. Both must agree.
pub fn symplectic_cohomology(
    md: &MomentData,
    v: &Cocharacter,
) -> Result<SymplecticCohomology, PresentationError> {
    let fan = &md.fan;
    let qh = quantum_cohomology(md)?;
    if qh.geometry.compact {
        return Err(PresentationError::CompactFan);
    }
    if support_membership(fan, v)? != Membership::Interior {
        return Err(PresentationError::NotContracting);
    }
    symplectic_from_quantum(md, v, &qh)
}

/// The two-route computation against an already-built quantum
/// presentation (used internally and by the forced-compact mode, where
/// only the eigenspace data is meaningful).
pub fn symplectic_from_quantum(
    md: &MomentData,
    v: &Cocharacter,
    qh: &QuantumCohomology,
) -> Result<SymplecticCohomology, PresentationError> {
    let fan = &md.fan;
    let ring = &qh.presentation.ring;
    let (_, exps) = rotation_monomial(fan, v)?;
    let xv = Poly::<NovikovScalar>::monomial(ring, exps);
    let m = multiplication_matrix(&qh.presentation.groebner, &xv)
        .map_err(|_| PresentationError::InfiniteQuotient)?;
    let d = qh.dim();
    let eigenspace_dim = if d == 0 {
        0
    } else {
        kernel_of_power(&m, d).dim()
    };
    let dim_a = d - eigenspace_dim;

    let all_vars: Monomial = vec![1u32; ring.arity];
    let gen_polys: Vec<Poly<NovikovScalar>> = qh
        .presentation
        .generators
        .iter()
        .map(|g| g.poly.clone())
        .collect();
    let sat = saturate(&gen_polys, &all_vars, ring);
    let sat_basis = standard_monomials(&sat);
    let Some(dim_b) = sat_basis.dim() else {
        return Err(PresentationError::InfiniteQuotient);
    };
    if dim_a != dim_b {
        return Err(PresentationError::RouteMismatch {
            eigenspace: dim_a,
            saturation: dim_b,
        });
    }
    // Reduced Laurent presentation: substitute the linear relations into
    // the saturated basis and re-reduce.
    let mut tagged: Vec<TaggedGenerator<NovikovScalar>> = qh
        .presentation
        .generators
        .iter()
        .filter(|g| matches!(g.tag, GeneratorTag::Linear { .. }))
        .cloned()
        .collect();
    tagged.extend(sat.generators().iter().map(|p| TaggedGenerator {
        tag: GeneratorTag::Localized,
        poly: p.clone(),
    }));
    let presentation = eliminate_linear(ring, &tagged);
    Ok(SymplecticCohomology {
        dim: dim_b,
        route_agreement: dim_a == dim_b,
        eigenspace_dim,
        qh_dim: d,
        presentation,
    })
}

/// The Jacobian ring of the superpotential determined by the moment data.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianRing {
    pub ring: Arc<Ring>,
    /// Partial derivatives after clearing denominators.
    pub generators: Vec<Poly<NovikovScalar>>,
    pub groebner: GroebnerBasis<NovikovScalar>,
    pub dim: usize,
    /// The (lambda_i, e_i) summands of the superpotential.
    pub summands: Vec<(i64, Vec<i64>)>,
}

/// Derivatives of W = sum T^{-lambda_i} z^{e_i}, cleared of denominators
/// and saturated by the product of the torus variables.
pub fn jacobian_ring(md: &MomentData) -> Result<JacobianRing, PresentationError> {
    let fan = &md.fan;
    polytope_vertices(md)?; // requires at least one vertex
    let n = fan.rank;
    let ring = Ring::zvars(n);
    let mut gens = vec![];
    for k in 0..n {
        // terms: e_{i,k} T^{-lambda_i} z^{e_i - u_k} over rays with e_{i,k} != 0
        let contributing: Vec<usize> = (0..fan.rays.len())
            .filter(|&i| fan.rays[i][k] != 0)
            .collect();
        if contributing.is_empty() {
            continue;
        }
        let mut shift = vec![0i64; n];
        for &i in &contributing {
            for j in 0..n {
                let e = fan.rays[i][j] - i64::from(j == k);
                if -e > shift[j] {
                    shift[j] = -e;
                }
            }
        }
        let mut terms = vec![];
        for &i in &contributing {
            let mono: Monomial = (0..n)
                .map(|j| {
                    let e = fan.rays[i][j] - i64::from(j == k) + shift[j];
                    u32::try_from(e).expect("shift clears negatives")
                })
                .collect();
            let coeff = NovikovScalar::t_power(-md.lambda[i])
                .mul(&NovikovScalar::from_int(fan.rays[i][k]));
            terms.push((mono, coeff));
        }
        gens.push(Poly::from_terms(&ring, terms));
    }
    let all_vars: Monomial = vec![1u32; n];
    let groebner = saturate(&gens, &all_vars, &ring);
    let basis = standard_monomials(&groebner);
    let Some(dim) = basis.dim() else {
        return Err(PresentationError::InfiniteQuotient);
    };
    let summands = (0..fan.rays.len())
        .map(|i| (md.lambda[i], fan.rays[i].clone()))
        .collect();
    Ok(JacobianRing {
        ring,
        generators: gens,
        groebner,
        dim,
        summands,
    })
}

/// The equivariant quantum presentation for the action of v.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantQuantum {
    /// Presentation over k[x1..xr, u] (u is the top variable).
    pub display: IdealPresentation<NovikovScalar>,
    /// Dimension of the quotient over the field k(u).
    pub rank_over_ku: usize,
    /// Whether setting u = 0 recovers exactly the quantum ideal.
    pub u0_matches_quantum: bool,
    pub xi0: Vec<i64>,
    pub vperp_basis: Vec<Vec<i64>>,
}

/// Generators: quantum Stanley-Reisner relations, linear relations for a
/// basis of the characters orthogonal to v, and one identification of u
/// along a character pairing to gcd(v).
pub fn equivariant_quantum(
    md: &MomentData,
    v: &Cocharacter,
) -> Result<EquivariantQuantum, PresentationError> {
    let fan = &md.fan;
    let qh = quantum_cohomology(md)?;
    if support_membership(fan, v)? != Membership::Interior {
        return Err(PresentationError::NotContracting);
    }
    if v.0.iter().all(|&x| x == 0) {
        return Err(PresentationError::NotContracting);
    }
    let n = fan.rank;
    let r = fan.rays.len();
    // HNF of v as a column: the first row of U pairs to gcd(v), the rest
    // form a basis of the orthogonal complement.
    let col = IntMatrix::from_i64(&v.0.iter().map(|&x| vec![x]).collect::<Vec<_>>());
    let (h, u_mat) = hermite_normal_form(&col);
    let g = i64::try_from(h.at(0, 0)).expect("small lattice data");
    assert!(g > 0, "nonzero cocharacter has positive gcd");
    let xi0: Vec<i64> = (0..n)
        .map(|c| i64::try_from(u_mat.at(0, c)).expect("small lattice data"))
        .collect();
    let vperp_basis: Vec<Vec<i64>> = (1..n)
        .map(|row| {
            (0..n)
                .map(|c| i64::try_from(u_mat.at(row, c)).expect("small lattice data"))
                .collect()
        })
        .collect();

    // Display ring k[x1..xr, u].
    let mut names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    names.push("u".into());
    let ring_u = Ring::new(r + 1, names, MonomialOrder::GrevLex);
    let mut display_gens: Vec<TaggedGenerator<NovikovScalar>> = vec![];
    for tg in quantum_sr_generators::<NovikovScalar>(md, &ring_u)? {
        display_gens.push(tg);
    }
    let pairing_poly = |xi: &[i64], ring: &Arc<Ring>| -> Poly<NovikovScalar> {
        let mut terms = vec![];
        for i in 0..r {
            let c: i64 = (0..n).map(|k| xi[k] * fan.rays[i][k]).sum();
            if c != 0 {
                let mut m = vec![0u32; ring.arity];
                m[i] = 1;
                terms.push((m, NovikovScalar::from_int(c)));
            }
        }
        Poly::from_terms(ring, terms)
    };
    for xi in &vperp_basis {
        display_gens.push(TaggedGenerator {
            tag: GeneratorTag::Linear { xi: xi.clone() },
            poly: pairing_poly(xi, &ring_u),
        });
    }
    let mut u_term = vec![0u32; r + 1];
    u_term[r] = 1;
    let u_ident = pairing_poly(&xi0, &ring_u).sub(&Poly::from_terms(
        &ring_u,
        vec![(u_term, NovikovScalar::from_int(g))],
    ));
    display_gens.push(TaggedGenerator {
        tag: GeneratorTag::UIdentification {
            xi0: xi0.clone(),
            pairing: g,
        },
        poly: u_ident,
    });
    let display = IdealPresentation::build(&ring_u, display_gens);

    // Rank over k(u): same generators with u moved into the scalars.
    let ring_x = Ring::xvars(r);
    let eq_gens: Vec<Poly<EqScalar>> = display
        .generators
        .iter()
        .map(|tg| lower_u_into_scalar(&tg.poly, &ring_x))
        .collect();
    let eq_gb = buchberger(&eq_gens, &ring_x);
    let Some(rank_over_ku) = standard_monomials(&eq_gb).dim() else {
        return Err(PresentationError::InfiniteQuotient);
    };

    // u = 0 specialization must reproduce the quantum ideal.
    let u0_gens: Vec<Poly<NovikovScalar>> = eq_gens
        .iter()
        .map(|p| {
            p.map_scalars(&ring_x, &|c: &EqScalar| c.specialize_u0())
                .ok_or(PresentationError::SpecializationPole)
        })
        .collect::<Result<_, _>>()?;
    let u0_gb = buchberger(&u0_gens, &ring_x);
    let u0_matches_quantum = u0_gb == qh.presentation.groebner;

    Ok(EquivariantQuantum {
        display,
        rank_over_ku,
        u0_matches_quantum,
        xi0,
        vperp_basis,
    })
}

/// Reinterpret a polynomial in k[x1..xr, u] as a polynomial in
/// k(u)[x1..xr].
fn lower_u_into_scalar(p: &Poly<NovikovScalar>, ring_x: &Arc<Ring>) -> Poly<EqScalar> {
    let r = ring_x.arity;
    let mut terms = vec![];
    for (m, c) in p.terms() {
        let ue = m[r];
        let coeff = EqScalar::from_novikov(c).mul(&EqScalar::constant(upow(ue)));
        terms.push((m[..r].to_vec(), coeff));
    }
    Poly::from_terms(ring_x, terms)
}

fn upow(e: u32) -> URat {
    URat::var_power(e as i64)
}

/// Equivariant symplectic data.
///
/// Two dimensions are reported because the u-identification leaves two
/// natural readings: `dim_over_ku` is the rank of the saturated quotient
/// over the rational-function field in u (the generic fiber of the
/// equivariant family), while `dim_u0` is the dimension of its u -> 0
/// limit after re-saturating, which is the number the Jacobian ring
/// matches.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantSymplectic {
    pub dim_over_ku: usize,
    pub dim_u0: usize,
    pub u_reduces_to_x: bool,
}

pub fn equivariant_symplectic(
    md: &MomentData,
    v: &Cocharacter,
) -> Result<EquivariantSymplectic, PresentationError> {
    let eq = equivariant_quantum(md, v)?;
    let r = md.fan.rays.len();
    let ring_x = Ring::xvars(r);
    let eq_gens: Vec<Poly<EqScalar>> = eq
        .display
        .generators
        .iter()
        .map(|tg| lower_u_into_scalar(&tg.poly, &ring_x))
        .collect();
    let all_vars: Monomial = vec![1u32; r];
    let sat = saturate(&eq_gens, &all_vars, &ring_x);
    let Some(dim_over_ku) = standard_monomials(&sat).dim() else {
        return Err(PresentationError::InfiniteQuotient);
    };
    let u0_gens: Vec<Poly<NovikovScalar>> = sat
        .generators()
        .iter()
        .map(|p| {
            p.map_scalars(&ring_x, &|c: &EqScalar| c.specialize_u0())
                .ok_or(PresentationError::SpecializationPole)
        })
        .collect::<Result<_, _>>()?;
    let u0_sat = saturate(&u0_gens, &all_vars, &ring_x);
    let Some(dim_u0) = standard_monomials(&u0_sat).dim() else {
        return Err(PresentationError::InfiniteQuotient);
    };
    // u-reduction check in the polynomial-u encoding: saturate by the x
    // variables only and take the normal form of u.
    let ring_u = &eq.display.ring;
    let mut xs_only = vec![1u32; r + 1];
    xs_only[r] = 0;
    let disp_polys: Vec<Poly<NovikovScalar>> = eq
        .display
        .generators
        .iter()
        .map(|g| g.poly.clone())
        .collect();
    let disp_sat = saturate(&disp_polys, &xs_only, ring_u);
    let mut u_mono = vec![0u32; r + 1];
    u_mono[r] = 1;
    let nf = normal_form(&Poly::monomial(ring_u, u_mono), &disp_sat);
    let u_reduces_to_x = nf.terms().iter().all(|(m, _)| m[r] == 0);
    Ok(EquivariantSymplectic {
        dim_over_ku,
        dim_u0,
        u_reduces_to_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn blp() -> MomentData {
        MomentData {
            fan: Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, -1]],
                vec![vec![1, 2], vec![2, 0], vec![0, 3]],
            )
            .unwrap(),
            lambda: vec![-1; 4],
        }
    }

    fn cp2() -> MomentData {
        MomentData {
            fan: Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
                vec![vec![0, 1], vec![1, 2], vec![2, 0]],
            )
            .unwrap(),
            lambda: vec![0, 0, -3],
        }
    }

    fn conifold() -> MomentData {
        MomentData {
            fan: Fan::new(
                3,
                vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]],
                vec![vec![0, 1, 2], vec![0, 2, 3]],
            )
            .unwrap(),
            lambda: vec![0, -1, 0, -1],
        }
    }

    fn o_minus_one() -> MomentData {
        MomentData {
            fan: Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                vec![vec![0, 2], vec![1, 2]],
            )
            .unwrap(),
            lambda: vec![-1; 3],
        }
    }

    fn c2() -> MomentData {
        MomentData {
            fan: Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap(),
            lambda: vec![0, 0],
        }
    }

    fn cc(v: &[i64]) -> Cocharacter {
        Cocharacter(v.to_vec())
    }

    #[test]
    fn geometry_classification() {
        let g = classify_geometry(&blp()).unwrap();
        match g.kind {
            GeometryKind::FanoMonotone { t, xi } => {
                assert_eq!(t, rat(1, 1));
                assert!(xi.iter().all(Zero::is_zero));
            }
            other => panic!("expected Fano, got {other:?}"),
        }
        assert!(!g.compact);

        let g = classify_geometry(&conifold()).unwrap();
        match g.kind {
            GeometryKind::CalabiYau { xi } => {
                let expect = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
                assert_eq!(xi, expect);
            }
            other => panic!("expected CY, got {other:?}"),
        }

        let skew = MomentData {
            fan: blp().fan,
            lambda: vec![-1, -1, -1, -5],
        };
        assert!(matches!(
            classify_geometry(&skew).unwrap().kind,
            GeometryKind::Other
        ));

        assert!(classify_geometry(&cp2()).unwrap().compact);
    }

    #[test]
    fn classical_presentations() {
        let p = classical_cohomology(&blp().fan).unwrap();
        assert_eq!(p.dim(), Some(3));
        assert_eq!(p.graded_dims, vec![(0, 1), (2, 2)]);

        let p = classical_cohomology(&conifold().fan).unwrap();
        assert_eq!(p.dim(), Some(2));
        let red = eliminate_linear(&p.ring, &p.generators);
        assert_eq!(red.kept, vec![0]);
        assert_eq!(red.groebner.generators().len(), 1);
        assert_eq!(format!("{}", red.groebner.generators()[0]), "x1^2");

        let p = classical_cohomology(&c2().fan).unwrap();
        assert_eq!(p.dim(), Some(1));
    }

    #[test]
    fn quantum_blp_reduces_to_known_ideal() {
        let qh = quantum_cohomology(&blp()).unwrap();
        assert_eq!(qh.dim(), 3);
        assert_eq!(qh.reduced.kept, vec![0, 1]);
        let printed: Vec<String> = qh
            .reduced
            .groebner
            .generators()
            .iter()
            .map(|g| format!("{g}"))
            .collect();
        assert_eq!(
            printed,
            vec!["x1^2", "x1*x2 + T*x1", "x2^2 + T*x1 - T^2"]
        );
    }

    #[test]
    fn quantum_cp2_is_x_cubed_minus_t_cubed() {
        let qh = quantum_cohomology(&cp2()).unwrap();
        assert_eq!(qh.dim(), 3);
        let printed: Vec<String> = qh
            .reduced
            .groebner
            .generators()
            .iter()
            .map(|g| format!("{g}"))
            .collect();
        assert_eq!(printed, vec!["x1^3 - T^3"]);
    }

    #[test]
    fn quantum_o_minus_one() {
        let qh = quantum_cohomology(&o_minus_one()).unwrap();
        let printed: Vec<String> = qh
            .reduced
            .groebner
            .generators()
            .iter()
            .map(|g| format!("{g}"))
            .collect();
        assert_eq!(printed, vec!["x1^2 + T*x1"]);
    }

    #[test]
    fn quantum_rejects_non_fano_and_bad_omega() {
        let skew = MomentData {
            fan: blp().fan,
            lambda: vec![-1, -1, -1, -5],
        };
        assert!(matches!(
            quantum_cohomology(&skew),
            Err(PresentationError::NotFanoOrCY)
        ));
        let degenerate = MomentData {
            fan: conifold().fan,
            lambda: vec![-1; 4],
        };
        assert!(matches!(
            quantum_cohomology(&degenerate),
            Err(PresentationError::NonPositiveOmega { .. })
        ));
    }

    #[test]
    fn symplectic_blp_vanishes() {
        let md = blp();
        for v in [[1, 1], [1, 2], [2, 1], [1, 0], [1, -1]] {
            let sh = symplectic_cohomology(&md, &cc(&v)).unwrap();
            assert_eq!(sh.dim, 0, "SH should vanish at {v:?}");
            assert!(sh.route_agreement);
            assert_eq!(sh.eigenspace_dim, 3);
        }
        assert!(matches!(
            symplectic_cohomology(&md, &cc(&[0, 1])),
            Err(PresentationError::NotContracting)
        ));
        assert!(matches!(
            symplectic_cohomology(&cp2(), &cc(&[1, 1])),
            Err(PresentationError::CompactFan)
        ));
    }

    #[test]
    fn symplectic_o_minus_one_is_one_dimensional() {
        let sh = symplectic_cohomology(&o_minus_one(), &cc(&[1, 1])).unwrap();
        assert_eq!(sh.dim, 1);
        assert_eq!(sh.qh_dim, 2);
        let printed: Vec<String> = sh
            .presentation
            .groebner
            .generators()
            .iter()
            .map(|g| format!("{g}"))
            .collect();
        assert_eq!(printed, vec!["x1 + T"]);
    }

    #[test]
    fn symplectic_conifold_vanishes() {
        let sh = symplectic_cohomology(&conifold(), &cc(&[1, 1, 2])).unwrap();
        assert_eq!(sh.dim, 0);
        let qh = quantum_cohomology(&conifold()).unwrap();
        assert_eq!(qh.dim(), 2);
    }

    #[test]
    fn jacobian_dimensions() {
        assert_eq!(jacobian_ring(&o_minus_one()).unwrap().dim, 1);
        assert_eq!(jacobian_ring(&cp2()).unwrap().dim, 3);
        assert_eq!(jacobian_ring(&blp()).unwrap().dim, 0);
    }

    #[test]
    fn equivariant_o_minus_one() {
        let md = o_minus_one();
        let eq = equivariant_quantum(&md, &cc(&[1, 1])).unwrap();
        assert_eq!(eq.rank_over_ku, 2);
        assert!(eq.u0_matches_quantum);
        let pairing: i64 = eq
            .xi0
            .iter()
            .zip(&[1i64, 1])
            .map(|(&a, &b)| a * b)
            .sum();
        assert_eq!(pairing, 1);
        let es = equivariant_symplectic(&md, &cc(&[1, 1])).unwrap();
        assert_eq!(es.dim_u0, 1);
        assert_eq!(es.dim_over_ku, 2);
        assert!(es.u_reduces_to_x);
    }

    #[test]
    fn equivariant_blp_and_c2() {
        let eq = equivariant_quantum(&blp(), &cc(&[1, 1])).unwrap();
        assert_eq!(eq.rank_over_ku, 3);
        assert!(eq.u0_matches_quantum);
        let es = equivariant_symplectic(&blp(), &cc(&[1, 1])).unwrap();
        assert_eq!(es.dim_u0, 0);
        assert_eq!(es.dim_over_ku, 3);

        let eq = equivariant_quantum(&c2(), &cc(&[1, 1])).unwrap();
        assert_eq!(eq.rank_over_ku, 1);
        let es = equivariant_symplectic(&c2(), &cc(&[1, 1])).unwrap();
        assert_eq!(es.dim_over_ku, 1);
        assert_eq!(es.dim_u0, 0);
    }
}
