//! Fans, cones, duality, Hilbert bases, moment polytopes, and the
//! combinatorial classification of one-parameter subgroup actions on the
//! associated toric manifold.
//!
//! Conventions: ray indices are 0-based internally (the CLI layer speaks
//! 1-based, matching the usual labelling of toric divisors). A fan is given
//! by its primitive ray generators and its maximal cones; faces are derived.

use crate::cone::{dual_description, primitivize, ConeRep};
use crate::matrix::{integer_kernel, rational_solve, IntMatrix};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyhedralError {
    #[error("NonPrimitiveRay: ray {index} is zero or not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("DuplicateRay: rays {a} and {b} coincide")]
    DuplicateRay { a: usize, b: usize },
    #[error("NonUnimodularCone: cone {cone:?} has determinant {det}")]
    NonUnimodularCone { cone: Vec<usize>, det: BigInt },
    #[error("ConeOverlap: cones {a:?} and {b:?} do not meet in a common face")]
    ConeOverlap { a: Vec<usize>, b: Vec<usize> },
    #[error("UnusedRay: ray {index} appears in no maximal cone")]
    UnusedRay { index: usize },
    #[error("MalformedCone: {reason}")]
    MalformedCone { reason: String },
    #[error("DimensionMismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("CompleteFan: the dual cone of a complete fan is trivial")]
    CompleteFan,
    #[error("UnboundedSearch: {0}")]
    UnboundedSearch(String),
    #[error("NotContracting: pairing with weight {weight:?} is {value} (not positive)")]
    NotContracting { weight: Vec<i64>, value: i64 },
    #[error("NoVertices: the fan has no full-dimensional cone")]
    NoVertices,
    #[error("UnboundedBelow: the moment functional of {v:?} is unbounded below")]
    UnboundedBelow { v: Vec<i64> },
    #[error("InadmissibleLambda: vertex of cone {cone:?} violates facet inequality {facet}")]
    InadmissibleLambda { cone: Vec<usize>, facet: usize },
    #[error("RhsMeetsLhs: ray {ray} appears on both sides of the relation")]
    RhsMeetsLhs { ray: usize },
    #[error("NonIntegralCoordinates: coefficient of ray {ray} is {value}")]
    NonIntegralCoordinates { ray: usize, value: BigRational },
    #[error("SumOutsideSupport: {v:?} lies outside the fan support")]
    SumOutsideSupport { v: Vec<i64> },
    #[error("NonIsolatedFixedLocus: fixed component of cone {cone:?} is positive-dimensional")]
    NonIsolatedFixedLocus { cone: Vec<usize> },
    #[error("NotComplete: {v:?} lies outside the fan support")]
    NotComplete { v: Vec<i64> },
}

/// A simplicial fan: lattice rank, primitive ray generators, maximal cones.
#[derive(Clone, Debug, PartialEq)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    /// Sorted 0-based ray index sets.
    pub max_cones: Vec<Vec<usize>>,
}

/// A fan together with the integer offsets defining the moment polytope
/// { x : <x, e_i> >= lambda_i }.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentData {
    pub fan: Fan,
    pub lambda: Vec<i64>,
}

/// An integer cocharacter v, labelling the one-parameter subgroup action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter(pub Vec<i64>);

impl Cocharacter {
    pub fn new(v: Vec<i64>) -> Self {
        Cocharacter(v)
    }
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// One component of the fixed locus of a one-parameter subgroup action.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedComponent {
    pub cone: Vec<usize>,
    pub orbit_dim: usize,
    pub compact: bool,
    /// True when the cocharacter lies in the cone itself, i.e. this
    /// component carries the minimum of the moment Hamiltonian.
    pub minimal: bool,
}

/// A list of character-lattice weights (e.g. a Hilbert basis of the dual
/// cone of the fan support).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSystem {
    pub weights: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionClass {
    Contracting,
    CompleteOnly,
    NotComplete,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub smooth: bool,
    pub support_convex: bool,
    pub support_full_dim: bool,
    pub complete: bool,
    pub semiprojective_candidate: bool,
}

impl Fan {
    pub fn new(
        rank: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, PolyhedralError> {
        let mut cones = vec![];
        for c in max_cones {
            let mut c = c;
            c.sort_unstable();
            c.dedup();
            cones.push(c);
        }
        let fan = Fan {
            rank,
            rays,
            max_cones: cones,
        };
        fan.check_shape()?;
        Ok(fan)
    }

    fn check_shape(&self) -> Result<(), PolyhedralError> {
        if self.rank == 0 || self.rays.is_empty() || self.max_cones.is_empty() {
            return Err(PolyhedralError::MalformedCone {
                reason: "fan needs positive rank, at least one ray and one cone".into(),
            });
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return Err(PolyhedralError::DimensionMismatch {
                    expected: self.rank,
                    got: r.len(),
                });
            }
            let _ = i;
        }
        for c in &self.max_cones {
            if c.is_empty() || c.len() > self.rank {
                return Err(PolyhedralError::MalformedCone {
                    reason: format!("cone {c:?} is empty or larger than the rank"),
                });
            }
            if c.iter().any(|&i| i >= self.rays.len()) {
                return Err(PolyhedralError::MalformedCone {
                    reason: format!("cone {c:?} references a missing ray"),
                });
            }
        }
        Ok(())
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Matrix whose rows are the rays indexed by `cone`.
    pub fn ray_matrix(&self, cone: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_i64(&rows)
    }

    /// Coordinates of v in the (independent) ray basis of `cone`:
    /// None when v is outside the linear span.
    pub fn cone_coordinates(&self, cone: &[usize], v: &[i64]) -> Option<Vec<BigRational>> {
        if cone.is_empty() {
            return if v.iter().all(|&x| x == 0) {
                Some(vec![])
            } else {
                None
            };
        }
        // Solve sum_j c_j e_{cone[j]} = v: columns are the rays.
        let a: Vec<Vec<BigRational>> = (0..self.rank)
            .map(|coord| {
                cone.iter()
                    .map(|&i| BigRational::from_integer(self.rays[i][coord].into()))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        let (sol, kernel) = rational_solve(&a, &b)?;
        debug_assert!(kernel.is_empty(), "cone rays must be independent");
        Some(sol)
    }

    pub fn in_cone(&self, cone: &[usize], v: &[i64]) -> bool {
        self.cone_coordinates(cone, v)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    pub fn full_dim_cones(&self) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| self.max_cones[i].len() == self.rank)
            .collect()
    }

    /// Every distinct cone of the fan (nonempty subsets of maximal cones).
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut set = BTreeSet::new();
        for c in &self.max_cones {
            let k = c.len();
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| c[j]).collect();
                set.insert(sub);
            }
        }
        let mut cones: Vec<Vec<usize>> = set.into_iter().collect();
        cones.sort_by_key(|c| (c.len(), c.clone()));
        cones
    }

    /// Walls (codimension-one faces of full-dimensional cones) that belong
    /// to exactly one maximal cone. Assumes a validated fan.
    pub fn boundary_walls(&self) -> Vec<Vec<usize>> {
        let mut out = vec![];
        let mut seen = BTreeSet::new();
        for &ci in &self.full_dim_cones() {
            let cone = &self.max_cones[ci];
            for drop in cone {
                let wall: Vec<usize> = cone.iter().filter(|&&i| i != *drop).cloned().collect();
                if seen.contains(&wall) {
                    continue;
                }
                seen.insert(wall.clone());
                let owners = self
                    .max_cones
                    .iter()
                    .filter(|mc| wall.iter().all(|i| mc.contains(i)))
                    .count();
                if owners == 1 {
                    out.push(wall);
                }
            }
        }
        out
    }

    /// Primitive inward normals of the facets of the support cone
    /// (the extreme rays of the dual cone). Assumes convex support.
    pub fn support_facets(&self) -> Vec<Vec<BigInt>> {
        dual_description(&self.rays, self.rank).rays
    }

    /// Whether the cone (as an index set) is contained in the interior of
    /// the support, i.e. no facet hyperplane of the support contains it.
    pub fn is_interior_cone(&self, cone: &[usize], facets: &[Vec<BigInt>]) -> bool {
        facets.iter().all(|h| {
            cone.iter().any(|&i| {
                let d: BigInt = self.rays[i]
                    .iter()
                    .zip(h)
                    .map(|(&a, b)| BigInt::from(a) * b)
                    .sum();
                d.is_positive()
            })
        })
    }
}

/// Structural and geometric validation of a fan.
pub fn validate_fan(fan: &Fan) -> Result<ValidationReport, PolyhedralError> {
    fan.check_shape()?;
    // Primitive, nonzero, pairwise distinct rays.
    for (i, r) in fan.rays.iter().enumerate() {
        let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
        if v.iter().all(|e| e.is_zero()) {
            return Err(PolyhedralError::NonPrimitiveRay { index: i });
        }
        let before = v.clone();
        primitivize(&mut v);
        if v != before {
            return Err(PolyhedralError::NonPrimitiveRay { index: i });
        }
    }
    for a in 0..fan.rays.len() {
        for b in a + 1..fan.rays.len() {
            if fan.rays[a] == fan.rays[b] {
                return Err(PolyhedralError::DuplicateRay { a, b });
            }
        }
    }
    let mut used = vec![false; fan.rays.len()];
    for c in &fan.max_cones {
        for &i in c {
            used[i] = true;
        }
    }
    if let Some(i) = used.iter().position(|&u| !u) {
        return Err(PolyhedralError::UnusedRay { index: i });
    }
    // No maximal cone contained in another.
    for a in 0..fan.max_cones.len() {
        for b in 0..fan.max_cones.len() {
            if a != b
                && fan.max_cones[a]
                    .iter()
                    .all(|i| fan.max_cones[b].contains(i))
            {
                return Err(PolyhedralError::ConeOverlap {
                    a: fan.max_cones[a].clone(),
                    b: fan.max_cones[b].clone(),
                });
            }
        }
    }
    // Unimodularity: full-dimensional cones have |det| = 1; lower ones
    // must extend to a lattice basis (gcd of maximal minors = 1).
    for c in &fan.max_cones {
        let m = fan.ray_matrix(c);
        if c.len() == fan.rank {
            let d = m.det();
            if d.magnitude() != BigInt::one().magnitude() {
                return Err(PolyhedralError::NonUnimodularCone {
                    cone: c.clone(),
                    det: d,
                });
            }
        } else {
            let g = gcd_of_maximal_minors(&m);
            if g != BigInt::one() {
                return Err(PolyhedralError::NonUnimodularCone {
                    cone: c.clone(),
                    det: g,
                });
            }
        }
    }
    // Pairwise intersections are common faces.
    for a in 0..fan.max_cones.len() {
        for b in a + 1..fan.max_cones.len() {
            if !cones_meet_in_common_face(fan, &fan.max_cones[a], &fan.max_cones[b]) {
                return Err(PolyhedralError::ConeOverlap {
                    a: fan.max_cones[a].clone(),
                    b: fan.max_cones[b].clone(),
                });
            }
        }
    }

    let all_rays = fan.ray_matrix(&(0..fan.rays.len()).collect::<Vec<_>>());
    let support_full_dim = all_rays.rank() == fan.rank;
    let has_full_dim_cone = !fan.full_dim_cones().is_empty();
    let all_max_full = fan.full_dim_cones().len() == fan.max_cones.len();

    let (support_convex, complete) = if !all_max_full {
        (fan.max_cones.len() == 1, false)
    } else {
        // Wall analysis: every wall is shared by exactly two cones or lies
        // on a supporting hyperplane of the whole ray set.
        let mut convex = true;
        let mut any_boundary = false;
        let mut seen = BTreeSet::new();
        'walls: for &ci in &fan.full_dim_cones() {
            let cone = fan.max_cones[ci].clone();
            for drop in &cone {
                let wall: Vec<usize> = cone.iter().filter(|&&i| i != *drop).cloned().collect();
                if !seen.insert(wall.clone()) {
                    continue;
                }
                let owners: Vec<usize> = (0..fan.max_cones.len())
                    .filter(|&m| wall.iter().all(|i| fan.max_cones[m].contains(i)))
                    .collect();
                if owners.len() >= 2 {
                    continue; // interior wall
                }
                any_boundary = true;
                // Supporting-hyperplane test for the boundary wall.
                let normal = wall_normal(fan, &wall, *drop);
                let ok = fan.rays.iter().all(|r| {
                    let d: BigInt = r.iter().zip(&normal).map(|(&a, b)| BigInt::from(a) * b).sum();
                    !d.is_negative()
                });
                if !ok {
                    convex = false;
                    break 'walls;
                }
            }
        }
        let complete = convex && !any_boundary && support_full_dim;
        (convex, complete)
    };

    Ok(ValidationReport {
        smooth: true,
        support_convex,
        support_full_dim,
        complete,
        semiprojective_candidate: support_convex && support_full_dim && has_full_dim_cone,
    })
}

fn gcd_of_maximal_minors(m: &IntMatrix) -> BigInt {
    use num::Integer;
    let k = m.rows;
    let n = m.cols;
    assert!(k <= n);
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let mut sub = IntMatrix::zero(k, k);
        for r in 0..k {
            for (j, &c) in cols.iter().enumerate() {
                *sub.at_mut(r, j) = m.at(r, c).clone();
            }
        }
        g = g.gcd(&sub.det());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] != i + n - k {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Primitive normal of the hyperplane spanned by an (n-1)-ray wall,
/// oriented positively against the dropped ray of its owner cone.
fn wall_normal(fan: &Fan, wall: &[usize], dropped: usize) -> Vec<BigInt> {
    let normal = if wall.is_empty() {
        // rank 1: the "wall" is the origin; normal along the dropped ray.
        fan.rays[dropped].iter().map(|&x| BigInt::from(x)).collect()
    } else {
        let m = fan.ray_matrix(wall);
        let kernel = integer_kernel(&m);
        assert_eq!(kernel.len(), 1, "wall must span a hyperplane");
        kernel.into_iter().next().unwrap()
    };
    let mut normal = normal;
    let d: BigInt = fan.rays[dropped]
        .iter()
        .zip(&normal)
        .map(|(&a, b)| BigInt::from(a) * b)
        .sum();
    assert!(!d.is_zero(), "dropped ray lies on its own wall");
    if d.is_negative() {
        for e in normal.iter_mut() {
            *e = -e.clone();
        }
    }
    primitivize(&mut normal);
    normal
}

/// Exact test that cone(a) and cone(b) intersect exactly in cone(a ∩ b).
#[allow(clippy::needless_range_loop)]
fn cones_meet_in_common_face(fan: &Fan, a: &[usize], b: &[usize]) -> bool {
    let common: Vec<usize> = a.iter().filter(|i| b.contains(i)).cloned().collect();
    // Halfspace description of the intersection: span conditions (as
    // opposite halfspace pairs) and coordinate positivity for both cones.
    let mut halfspaces: Vec<Vec<i64>> = vec![];
    for cone in [a, b] {
        let m = fan.ray_matrix(cone);
        for z in integer_kernel(&m) {
            let zi: Vec<i64> = z.iter().map(|x| i64::try_from(x).expect("small lattice data")).collect();
            halfspaces.push(zi.clone());
            halfspaces.push(zi.iter().map(|&x| -x).collect());
        }
        for f in coordinate_functionals(fan, cone) {
            halfspaces.push(f);
        }
    }
    let rep = dual_description(&halfspaces, fan.rank);
    if !rep.lineality.is_empty() {
        return false; // intersection of pointed cones cannot have lines
    }
    rep.rays.iter().all(|r| ray_in_cone(fan, &common, r))
}

/// Integer row functionals computing the simplicial coordinates on the
/// span of the cone (each is >= 0 exactly on the cone within the span).
fn coordinate_functionals(fan: &Fan, cone: &[usize]) -> Vec<Vec<i64>> {
    let k = cone.len();
    let a = fan.ray_matrix(cone); // k x n
    // Solve (A A^T) Y = A, rows of Y are the functionals.
    let aat: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for c in 0..fan.rank {
                        acc += a.at(i, c) * a.at(j, c);
                    }
                    BigRational::from_integer(acc)
                })
                .collect()
        })
        .collect();
    let mut out = vec![];
    for i in 0..k {
        let e_i: Vec<BigRational> = (0..k)
            .map(|j| {
                if i == j {
                    <BigRational as One>::one()
                } else {
                    <BigRational as Zero>::zero()
                }
            })
            .collect();
        let (y, _) = rational_solve(&aat, &e_i).expect("gram matrix is invertible");
        // functional = y^T A, then scaled to primitive integers
        let mut f: Vec<BigRational> = (0..fan.rank)
            .map(|c| {
                let mut acc = <BigRational as Zero>::zero();
                for j in 0..k {
                    acc += &y[j] * BigRational::from_integer(a.at(j, c).clone());
                }
                acc
            })
            .collect();
        // clear denominators
        let mut denom = BigInt::one();
        for q in &f {
            denom = num::Integer::lcm(&denom, q.denom());
        }
        for q in f.iter_mut() {
            *q = &*q * BigRational::from_integer(denom.clone());
        }
        let mut fi: Vec<BigInt> = f.iter().map(|q| q.to_integer()).collect();
        primitivize(&mut fi);
        out.push(
            fi.iter()
                .map(|x| i64::try_from(x).expect("small lattice data"))
                .collect(),
        );
    }
    out
}

fn ray_in_cone(fan: &Fan, cone: &[usize], r: &[BigInt]) -> bool {
    if cone.is_empty() {
        return r.iter().all(|e| e.is_zero());
    }
    let a: Vec<Vec<BigRational>> = (0..fan.rank)
        .map(|coord| {
            cone.iter()
                .map(|&i| BigRational::from_integer(fan.rays[i][coord].into()))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    match rational_solve(&a, &b) {
        None => false,
        Some((sol, _)) => sol.iter().all(|c| !c.is_negative()),
    }
}

/// Membership of a cocharacter in the support: Interior (contracting),
/// Boundary (complete but not contracting), or Outside.
pub fn support_membership(fan: &Fan, v: &Cocharacter) -> Result<Membership, PolyhedralError> {
    let v = check_dim(fan, v)?;
    let in_support = fan.max_cones.iter().any(|c| fan.in_cone(c, v));
    if !in_support {
        return Ok(Membership::Outside);
    }
    let all_max_full = fan.full_dim_cones().len() == fan.max_cones.len();
    if !all_max_full {
        return Ok(Membership::Boundary);
    }
    let on_boundary = fan
        .boundary_walls()
        .iter()
        .any(|w| fan.in_cone(w, v));
    Ok(if on_boundary {
        Membership::Boundary
    } else {
        Membership::Interior
    })
}

fn check_dim<'a>(fan: &Fan, v: &'a Cocharacter) -> Result<&'a [i64], PolyhedralError> {
    if v.0.len() != fan.rank {
        return Err(PolyhedralError::DimensionMismatch {
            expected: fan.rank,
            got: v.0.len(),
        });
    }
    Ok(&v.0)
}

/// The unique minimal Hilbert basis of the dual cone of the fan support.
pub fn dual_cone_hilbert_basis(fan: &Fan) -> Result<WeightSystem, PolyhedralError> {
    let rep: ConeRep = dual_description(&fan.rays, fan.rank);
    if rep.is_trivial() {
        return Err(PolyhedralError::CompleteFan);
    }
    if !rep.lineality.is_empty() {
        return Err(PolyhedralError::UnboundedSearch(
            "dual cone is not pointed; fan support is not full-dimensional".into(),
        ));
    }
    let gens: Vec<Vec<i64>> = rep
        .rays
        .iter()
        .map(|g| {
            g.iter()
                .map(|x| i64::try_from(x).expect("small lattice data"))
                .collect()
        })
        .collect();
    // Zonotope bound: Hilbert basis elements lie in { sum t_k g_k, t in [0,1] }.
    let n = fan.rank;
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for g in &gens {
        for j in 0..n {
            if g[j] < 0 {
                lo[j] += g[j];
            } else {
                hi[j] += g[j];
            }
        }
    }
    let mut volume: i128 = 1;
    for j in 0..n {
        volume = volume.saturating_mul((hi[j] - lo[j] + 1) as i128);
        if volume > 2_000_000 {
            return Err(PolyhedralError::UnboundedSearch(format!(
                "zonotope bounding box exceeds {} lattice points",
                2_000_000
            )));
        }
    }
    let in_dual = |w: &[i64]| -> bool {
        fan.rays
            .iter()
            .all(|e| e.iter().zip(w).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>() >= 0)
    };
    let mut candidates: Vec<Vec<i64>> = vec![];
    let mut cursor = lo.clone();
    'enumerate: loop {
        if cursor.iter().any(|&x| x != 0) && in_dual(&cursor) {
            candidates.push(cursor.clone());
        }
        for j in 0..n {
            if cursor[j] < hi[j] {
                cursor[j] += 1;
                continue 'enumerate;
            }
            cursor[j] = lo[j];
        }
        break;
    }
    // Sieve: w is reducible when w = u + (w - u) splits within the
    // semigroup; testing u over the candidate set is exhaustive because
    // every irreducible lies in the zonotope.
    let mut basis: Vec<Vec<i64>> = vec![];
    'outer: for w in &candidates {
        for u in &candidates {
            if u == w {
                continue;
            }
            let diff: Vec<i64> = w.iter().zip(u).map(|(&a, &b)| a - b).collect();
            if diff.iter().all(|&x| x == 0) {
                continue;
            }
            if in_dual(&diff) {
                // ensure diff is in the cone, i.e. w = u + diff is a real split
                continue 'outer;
            }
        }
        basis.push(w.clone());
    }
    basis.sort();
    Ok(WeightSystem { weights: basis })
}

/// Classify the action of v against a weight system: contracting iff all
/// pairings are strictly positive, complete iff all are nonnegative.
pub fn classify_action_from_weights(
    ws: &WeightSystem,
    v: &Cocharacter,
) -> Result<ActionClass, PolyhedralError> {
    let mut any_zero = false;
    for w in &ws.weights {
        if w.len() != v.0.len() {
            return Err(PolyhedralError::DimensionMismatch {
                expected: w.len(),
                got: v.0.len(),
            });
        }
        let p: i64 = w.iter().zip(&v.0).map(|(&a, &b)| a * b).sum();
        if p < 0 {
            return Ok(ActionClass::NotComplete);
        }
        if p == 0 {
            any_zero = true;
        }
    }
    Ok(if any_zero {
        ActionClass::CompleteOnly
    } else {
        ActionClass::Contracting
    })
}

/// Exponents of the rescaling map attached to a contracting action:
/// lcm of the pairings and the per-weight cofactors.
pub fn psi_map_exponents(
    ws: &WeightSystem,
    v: &Cocharacter,
) -> Result<(i64, Vec<i64>), PolyhedralError> {
    let mut pairings = vec![];
    for w in &ws.weights {
        if w.len() != v.0.len() {
            return Err(PolyhedralError::DimensionMismatch {
                expected: w.len(),
                got: v.0.len(),
            });
        }
        let p: i64 = w.iter().zip(&v.0).map(|(&a, &b)| a * b).sum();
        if p <= 0 {
            return Err(PolyhedralError::NotContracting {
                weight: w.clone(),
                value: p,
            });
        }
        pairings.push(p);
    }
    let mut l: i64 = 1;
    for &p in &pairings {
        l = num::Integer::lcm(&l, &p);
    }
    let cofactors = pairings.iter().map(|&p| l / p).collect();
    Ok((l, cofactors))
}

/// A polytope vertex with the maximal cone it came from.
pub type Vertex = (Vec<BigRational>, Vec<usize>);

/// Vertices of the moment polytope, one per full-dimensional cone,
/// duplicates merged.
pub fn polytope_vertices(md: &MomentData) -> Result<Vec<Vertex>, PolyhedralError> {
    let fan = &md.fan;
    let full = fan.full_dim_cones();
    if full.is_empty() {
        return Err(PolyhedralError::NoVertices);
    }
    let mut out: Vec<(Vec<BigRational>, Vec<usize>)> = vec![];
    for ci in full {
        let cone = &fan.max_cones[ci];
        let a: Vec<Vec<BigRational>> = cone
            .iter()
            .map(|&i| {
                fan.rays[i]
                    .iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = cone
            .iter()
            .map(|&i| BigRational::from_integer(md.lambda[i].into()))
            .collect();
        let (x, kernel) = rational_solve(&a, &b).expect("unimodular cone system is solvable");
        debug_assert!(kernel.is_empty());
        for (j, ray) in fan.rays.iter().enumerate() {
            let val: BigRational = ray
                .iter()
                .zip(&x)
                .map(|(&r, q)| BigRational::from_integer(r.into()) * q)
                .sum();
            if val < BigRational::from_integer(md.lambda[j].into()) {
                return Err(PolyhedralError::InadmissibleLambda {
                    cone: cone.clone(),
                    facet: j,
                });
            }
        }
        if !out.iter().any(|(v, _)| v == &x) {
            out.push((x, cone.clone()));
        }
    }
    Ok(out)
}

/// Minimum of the moment Hamiltonian <., v> over the polytope; requires v
/// in the support (otherwise unbounded below).
pub fn min_moment(md: &MomentData, v: &Cocharacter) -> Result<BigRational, PolyhedralError> {
    let membership = support_membership(&md.fan, v)?;
    if membership == Membership::Outside {
        return Err(PolyhedralError::UnboundedBelow { v: v.0.clone() });
    }
    let verts = polytope_vertices(md)?;
    let mut best: Option<BigRational> = None;
    for (x, _) in verts {
        let val: BigRational = x
            .iter()
            .zip(&v.0)
            .map(|(q, &c)| q * BigRational::from_integer(c.into()))
            .sum();
        best = Some(match best {
            None => val,
            Some(b) => {
                if val < b {
                    val
                } else {
                    b
                }
            }
        });
    }
    best.ok_or(PolyhedralError::NoVertices)
}

/// All minimal non-faces: index sets spanning no cone while every proper
/// subset spans one.
pub fn primitive_subsets(fan: &Fan) -> Vec<Vec<usize>> {
    let r = fan.rays.len();
    let is_face = |s: &[usize]| -> bool {
        fan.max_cones
            .iter()
            .any(|c| s.iter().all(|i| c.contains(i)))
    };
    let mut out = vec![];
    for mask in 1u64..(1 << r) {
        let s: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        if s.len() < 2 || is_face(&s) {
            continue;
        }
        let all_proper_faces = s.iter().all(|&skip| {
            let sub: Vec<usize> = s.iter().filter(|&&i| i != skip).cloned().collect();
            is_face(&sub)
        });
        if all_proper_faces {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// Express the sum of the rays of a primitive subset in the ray basis of
/// the minimal cone containing it: the right-hand side of the relation
/// behind the quantum deformation of the Stanley-Reisner relation.
pub fn batyrev_rhs(
    fan: &Fan,
    subset: &[usize],
) -> Result<Vec<(usize, i64)>, PolyhedralError> {
    let s: Vec<i64> = (0..fan.rank)
        .map(|c| subset.iter().map(|&i| fan.rays[i][c]).sum())
        .collect();
    if s.iter().all(|&x| x == 0) {
        return Ok(vec![]);
    }
    let home = fan
        .max_cones
        .iter()
        .find(|c| fan.in_cone(c, &s))
        .ok_or(PolyhedralError::SumOutsideSupport { v: s.clone() })?;
    let coords = fan.cone_coordinates(home, &s).expect("membership implies span");
    let mut rhs = vec![];
    for (j, c) in home.iter().zip(&coords) {
        if c.is_zero() {
            continue;
        }
        if !c.denom().is_one() {
            return Err(PolyhedralError::NonIntegralCoordinates {
                ray: *j,
                value: c.clone(),
            });
        }
        if subset.contains(j) {
            return Err(PolyhedralError::RhsMeetsLhs { ray: *j });
        }
        let coeff = i64::try_from(&c.to_integer()).expect("small lattice data");
        rhs.push((*j, coeff));
    }
    rhs.sort_by_key(|&(j, _)| j);
    Ok(rhs)
}

/// The monomial representing the rotation class of v: v is written with
/// nonnegative integer coordinates in the first maximal cone containing
/// it, and the exponents are placed at the matching ray indices.
pub fn rotation_monomial(
    fan: &Fan,
    v: &Cocharacter,
) -> Result<(usize, Vec<u32>), PolyhedralError> {
    let vs = check_dim(fan, v)?;
    for (ci, cone) in fan.max_cones.iter().enumerate() {
        let Some(coords) = fan.cone_coordinates(cone, vs) else {
            continue;
        };
        if coords.iter().any(|q| q.is_negative()) {
            continue;
        }
        let mut exps = vec![0u32; fan.rays.len()];
        for (&i, q) in cone.iter().zip(&coords) {
            assert!(
                q.denom().is_one(),
                "unimodular cone gives integer coordinates"
            );
            exps[i] = u32::try_from(&q.to_integer()).expect("small lattice data");
        }
        return Ok((ci, exps));
    }
    Err(PolyhedralError::NotComplete { v: vs.to_vec() })
}

/// Components of the fixed locus of the action of v: the minimal cones
/// whose span contains v.
pub fn fixed_locus(fan: &Fan, v: &Cocharacter) -> Result<Vec<FixedComponent>, PolyhedralError> {
    let vs = check_dim(fan, v)?.to_vec();
    let facets = fan.support_facets();
    let mut cones = fan.all_cones();
    if vs.iter().all(|&x| x == 0) {
        cones.insert(0, vec![]);
    }
    let mut kept: Vec<Vec<usize>> = vec![];
    for c in cones {
        if fan.cone_coordinates(&c, &vs).is_none() {
            continue;
        }
        if kept.iter().any(|k| k.iter().all(|i| c.contains(i))) {
            continue; // a smaller kept cone is a face of this one
        }
        kept.push(c);
    }
    let mut out = vec![];
    for c in kept {
        let compact = fan.is_interior_cone(&c, &facets);
        let minimal = fan
            .cone_coordinates(&c, &vs)
            .is_some_and(|coords| coords.iter().all(|q| !q.is_negative()));
        out.push(FixedComponent {
            orbit_dim: fan.rank - c.len(),
            compact,
            minimal,
            cone: c,
        });
    }
    out.sort_by_key(|fc| (fc.cone.len(), fc.cone.clone()));
    Ok(out)
}

/// All interior cones (dimension >= 1). For a contracting action these
/// index the orbit closures whose union is the core.
pub fn core(fan: &Fan) -> Vec<Vec<usize>> {
    let facets = fan.support_facets();
    fan.all_cones()
        .into_iter()
        .filter(|c| fan.is_interior_cone(c, &facets))
        .collect()
}

/// Per-vertex data of an isolated-fixed-point action: tangent weights of
/// v in each vertex cone basis, and the Morse index (twice the number of
/// negative weights).
#[derive(Clone, Debug, PartialEq)]
pub struct MorseBottPoint {
    pub vertex: Vec<BigRational>,
    pub cone: Vec<usize>,
    pub weights: Vec<i64>,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorseBottData {
    pub points: Vec<MorseBottPoint>,
    /// Coefficients of the Poincaré polynomial: (exponent, multiplicity).
    pub poincare: Vec<(usize, usize)>,
}

pub fn morse_bott_data(
    md: &MomentData,
    v: &Cocharacter,
) -> Result<MorseBottData, PolyhedralError> {
    let fan = &md.fan;
    let membership = support_membership(fan, v)?;
    if membership != Membership::Interior {
        return Err(PolyhedralError::NotContracting {
            weight: v.0.clone(),
            value: 0,
        });
    }
    for fc in fixed_locus(fan, v)? {
        if fc.cone.len() != fan.rank {
            return Err(PolyhedralError::NonIsolatedFixedLocus { cone: fc.cone });
        }
    }
    let verts = polytope_vertices(md)?;
    let mut points = vec![];
    for (vertex, cone) in verts {
        let coords = fan
            .cone_coordinates(&cone, &v.0)
            .expect("full-dimensional cone spans the lattice");
        let weights: Vec<i64> = coords
            .iter()
            .map(|q| {
                assert!(q.denom().is_one(), "unimodular cone gives integer weights");
                i64::try_from(&q.to_integer()).expect("small lattice data")
            })
            .collect();
        let index = 2 * weights.iter().filter(|&&w| w < 0).count();
        points.push(MorseBottPoint {
            vertex,
            cone,
            weights,
            index,
        });
    }
    let mut poincare: Vec<(usize, usize)> = vec![];
    for p in &points {
        match poincare.iter_mut().find(|(e, _)| *e == p.index) {
            Some((_, m)) => *m += 1,
            None => poincare.push((p.index, 1)),
        }
    }
    poincare.sort();
    Ok(MorseBottData { points, poincare })
}
