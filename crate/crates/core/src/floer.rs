//! Rotation-class calculus realized as exact algebra: normalized rotation
//! classes, the a-function on cocharacters, period-rescaling constants,
//! and the integer-period filtration of quantum cohomology by powers of a
//! rotation class acting on its generalized 0-eigenspace.

use crate::groebner::{multiplication_matrix, normal_form, Monomial, Poly};
use crate::matrix::{kernel_of_power, FieldMatrix, Subspace};
use crate::polyhedral::{
    min_moment, rotation_monomial, support_membership, Cocharacter, Membership, MomentData,
    PolyhedralError, WeightSystem,
};
use crate::presentations::{PresentationError, QuantumCohomology};
use crate::scalar::{NovikovScalar, TPower};
use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FloerError {
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("NotComplete: {v:?} is not in the support of the fan")]
    NotComplete { v: Vec<i64> },
    #[error("NotContracting: {v:?} is not in the support interior")]
    NotContracting { v: Vec<i64> },
    #[error("InfiniteQuotient: the quantum quotient must be finite-dimensional")]
    InfiniteQuotient,
    #[error("NonIntegralPeriod: min H = {value} is not an integer")]
    NonIntegralPeriod { value: BigRational },
}

/// The rotation class of a complete cocharacter: its representing
/// monomial in a maximal cone, the normal form in the quantum quotient,
/// the minimum of its moment Hamiltonian, and the normalized class
/// T^{min H} times the normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationClass {
    pub v: Cocharacter,
    pub cone_index: usize,
    pub monomial: Monomial,
    pub normal_form: Poly<NovikovScalar>,
    pub min_h: BigRational,
    pub normalized: Poly<NovikovScalar>,
}

fn min_moment_int(md: &MomentData, v: &Cocharacter) -> Result<(BigRational, i64), FloerError> {
    let m = match min_moment(md, v) {
        Ok(m) => m,
        Err(PolyhedralError::UnboundedBelow { v }) => {
            return Err(FloerError::NotComplete { v })
        }
        Err(e) => return Err(e.into()),
    };
    if !m.denom().eq(&num::BigInt::from(1)) {
        return Err(FloerError::NonIntegralPeriod { value: m });
    }
    let k = i64::try_from(&m.to_integer()).expect("small lattice data");
    Ok((m, k))
}

pub fn rotation_class(
    md: &MomentData,
    v: &Cocharacter,
    qh: &QuantumCohomology,
) -> Result<RotationClass, FloerError> {
    let (cone_index, exps) = match rotation_monomial(&md.fan, v) {
        Ok(x) => x,
        Err(PolyhedralError::NotComplete { v }) => return Err(FloerError::NotComplete { v }),
        Err(e) => return Err(e.into()),
    };
    let ring = &qh.presentation.ring;
    let xv = Poly::<NovikovScalar>::monomial(ring, exps.clone());
    let nf = normal_form(&xv, &qh.presentation.groebner);
    let (min_h, k) = min_moment_int(md, v)?;
    let normalized = nf.scale(&NovikovScalar::t_power(k));
    Ok(RotationClass {
        v: v.clone(),
        cone_index,
        monomial: exps,
        normal_form: nf,
        min_h,
        normalized,
    })
}

/// a(v_1,...,v_k) = min H_{v_1+...+v_k} - sum_i min H_{v_i}.
pub fn a_function(md: &MomentData, vs: &[Cocharacter]) -> Result<BigRational, FloerError> {
    assert!(!vs.is_empty(), "a-function needs at least one cocharacter");
    let n = md.fan.rank;
    let mut total = vec![0i64; n];
    let mut sum_mins = BigRational::from_integer(0.into());
    for v in vs {
        for (t, &c) in total.iter_mut().zip(&v.0) {
            *t += c;
        }
        let (m, _) = min_moment_int(md, v)?;
        sum_mins += m;
    }
    let (m_total, _) = min_moment_int(md, &Cocharacter(total))?;
    Ok(m_total - sum_mins)
}

/// Check the homomorphism property of normalized rotation classes:
/// T^{min H_v + min H_v'} [x^v][x^{v'}] = T^{min H_{v+v'}} [x^{v+v'}]
/// in the quantum quotient.
pub fn verify_rotation_homomorphism(
    md: &MomentData,
    qh: &QuantumCohomology,
    v: &Cocharacter,
    vp: &Cocharacter,
) -> Result<bool, FloerError> {
    let sum = Cocharacter(v.0.iter().zip(&vp.0).map(|(&a, &b)| a + b).collect());
    let rv = rotation_class(md, v, qh)?;
    let rvp = rotation_class(md, vp, qh)?;
    let rsum = rotation_class(md, &sum, qh)?;
    let ring = &qh.presentation.ring;
    let prod = Poly::<NovikovScalar>::monomial(ring, rv.monomial.clone())
        .mul(&Poly::monomial(ring, rvp.monomial.clone()));
    let lhs = normal_form(&prod, &qh.presentation.groebner)
        .scale(&NovikovScalar::t_power(as_int(&rv.min_h) + as_int(&rvp.min_h)));
    Ok(lhs == rsum.normalized)
}

fn as_int(q: &BigRational) -> i64 {
    i64::try_from(&q.to_integer()).expect("integral period")
}

/// k(v, v') = min_j <v, w^j> / <v', w^j> over the weight system.
pub fn rescaling_constant(
    ws: &WeightSystem,
    v: &Cocharacter,
    vp: &Cocharacter,
) -> Result<BigRational, FloerError> {
    let mut best: Option<BigRational> = None;
    for w in &ws.weights {
        let a: i64 = w.iter().zip(&v.0).map(|(&x, &y)| x * y).sum();
        let b: i64 = w.iter().zip(&vp.0).map(|(&x, &y)| x * y).sum();
        if a <= 0 {
            return Err(FloerError::NotContracting { v: v.0.clone() });
        }
        if b <= 0 {
            return Err(FloerError::NotContracting { v: vp.0.clone() });
        }
        let ratio = BigRational::new(a.into(), b.into());
        best = Some(match best {
            None => ratio,
            Some(cur) => {
                if ratio < cur {
                    ratio
                } else {
                    cur
                }
            }
        });
    }
    best.ok_or(FloerError::NotContracting { v: v.0.clone() })
}

/// The integer-period filtration data of a contracting action: the
/// generalized 0-eigenspace E_v of quantum multiplication by the rotation
/// monomial, the descending chain of its images under that
/// multiplication, and the order of nilpotency.
#[derive(Clone, Debug, PartialEq)]
pub struct FiltrationChain {
    pub v: Cocharacter,
    pub e_v: Subspace<NovikovScalar>,
    /// chain[j] = M^j E_v; the last entry is the zero subspace.
    pub chain: Vec<Subspace<NovikovScalar>>,
    pub chain_dims: Vec<usize>,
    /// Order of nilpotency: first j with M^j E_v = 0.
    pub n_v: usize,
    pub qh_dim: usize,
    pub sh_dim: usize,
}

pub fn integer_filtration(
    md: &MomentData,
    v: &Cocharacter,
    qh: &QuantumCohomology,
) -> Result<FiltrationChain, FloerError> {
    if support_membership(&md.fan, v)? != Membership::Interior {
        return Err(FloerError::NotContracting { v: v.0.clone() });
    }
    let (m, d) = rotation_multiplication(md, v, qh)?;
    let e_v = if d == 0 {
        Subspace::zero(0)
    } else {
        kernel_of_power(&m, d)
    };
    let mut chain = vec![e_v.clone()];
    while chain.last().unwrap().dim() > 0 {
        let next = chain.last().unwrap().image_under(&m);
        assert!(
            next.dim() < chain.last().unwrap().dim(),
            "chain must strictly decrease until zero"
        );
        chain.push(next);
    }
    let chain_dims: Vec<usize> = chain.iter().map(|s| s.dim()).collect();
    let n_v = chain.len() - 1;
    Ok(FiltrationChain {
        v: v.clone(),
        sh_dim: d - e_v.dim(),
        e_v,
        chain,
        chain_dims,
        n_v,
        qh_dim: d,
    })
}

fn rotation_multiplication(
    md: &MomentData,
    v: &Cocharacter,
    qh: &QuantumCohomology,
) -> Result<(FieldMatrix<NovikovScalar>, usize), FloerError> {
    let (_, exps) = rotation_monomial(&md.fan, v)?;
    let ring = &qh.presentation.ring;
    let xv = Poly::<NovikovScalar>::monomial(ring, exps);
    let m = multiplication_matrix(&qh.presentation.groebner, &xv)
        .map_err(|_| FloerError::InfiniteQuotient)?;
    let d = qh.dim();
    Ok((m, d))
}

/// Subspace containment Q_{v'}^{p'} E_{v'} <= Q_v^p E_v on canonical bases.
pub fn filtration_inclusion(
    md: &MomentData,
    v: &Cocharacter,
    vp: &Cocharacter,
    p: usize,
    pp: usize,
    qh: &QuantumCohomology,
) -> Result<bool, FloerError> {
    let fv = integer_filtration(md, v, qh)?;
    let fvp = integer_filtration(md, vp, qh)?;
    let left = chain_entry(&fvp, pp);
    let right = chain_entry(&fv, p);
    Ok(left.is_subspace_of(right))
}

fn chain_entry(chain: &FiltrationChain, p: usize) -> &Subspace<NovikovScalar> {
    let idx = p.min(chain.chain.len() - 1);
    &chain.chain[idx]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::{dual_cone_hilbert_basis, Fan};
    use crate::presentations::quantum_cohomology;
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

    fn cc(v: &[i64]) -> Cocharacter {
        Cocharacter(v.to_vec())
    }

    #[test]
    fn rotation_classes() {
        let md = blp();
        let qh = quantum_cohomology(&md).unwrap();
        let rc = rotation_class(&md, &cc(&[1, 2]), &qh).unwrap();
        assert_eq!(rc.monomial, vec![0, 1, 1, 0]); // x2 * x3
        for i in 0..4 {
            let mut e = vec![0i64; 2];
            e.clone_from_slice(&md.fan.rays[i]);
            let rc = rotation_class(&md, &cc(&e), &qh).unwrap();
            let mut expect = vec![0u32; 4];
            expect[i] = 1;
            assert_eq!(rc.monomial, expect);
        }

        let md = cp2();
        let qh = quantum_cohomology(&md).unwrap();
        let rc = rotation_class(&md, &cc(&[-1, -1]), &qh).unwrap();
        assert_eq!(rc.min_h, rat(-3, 1));
        assert_eq!(format!("{}", rc.normalized), "((1)/(T^3))*x1");

        assert!(matches!(
            rotation_class(&blp(), &cc(&[-1, 0]), &quantum_cohomology(&blp()).unwrap()),
            Err(FloerError::NotComplete { .. })
        ));
    }

    #[test]
    fn a_function_cp2() {
        let md = cp2();
        let e1 = cc(&[1, 0]);
        let e2 = cc(&[0, 1]);
        let e3 = cc(&[-1, -1]);
        assert_eq!(
            a_function(&md, &[e1.clone(), e2.clone()]).unwrap(),
            rat(0, 1)
        );
        assert_eq!(a_function(&md, &[e1.clone(), e2, e3]).unwrap(), rat(3, 1));
        assert_eq!(a_function(&md, &[e1]).unwrap(), rat(0, 1));
    }

    #[test]
    fn rotation_homomorphism() {
        let md = cp2();
        let qh = quantum_cohomology(&md).unwrap();
        assert!(verify_rotation_homomorphism(&md, &qh, &cc(&[1, 0]), &cc(&[0, 1])).unwrap());
        assert!(verify_rotation_homomorphism(&md, &qh, &cc(&[1, 1]), &cc(&[-1, -1])).unwrap());

        let md = blp();
        let qh = quantum_cohomology(&md).unwrap();
        assert!(verify_rotation_homomorphism(&md, &qh, &cc(&[1, 1]), &cc(&[0, 1])).unwrap());
        assert!(verify_rotation_homomorphism(&md, &qh, &cc(&[1, 1]), &cc(&[0, 0])).unwrap());
    }

    #[test]
    fn non_cone_decomposition_differs_by_predicted_t_power() {
        // (1,2) = e2 + e3 inside a maximal cone, but also e1 + 2 e2 across
        // cones; the two monomials agree up to one power of T.
        let md = blp();
        let qh = quantum_cohomology(&md).unwrap();
        let ring = &qh.presentation.ring;
        let x2x3 = Poly::<NovikovScalar>::monomial(ring, vec![0, 1, 1, 0]);
        let x1x2sq = Poly::<NovikovScalar>::monomial(ring, vec![1, 2, 0, 0]);
        let lhs = normal_form(&x1x2sq, &qh.presentation.groebner);
        let rhs = normal_form(&x2x3, &qh.presentation.groebner)
            .scale(&NovikovScalar::t_power(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rescaling_constants() {
        let a2 = WeightSystem {
            weights: vec![vec![1, 2], vec![2, 1], vec![1, 1]],
        };
        assert_eq!(
            rescaling_constant(&a2, &cc(&[1, 1]), &cc(&[1, 0])).unwrap(),
            rat(3, 2)
        );
        assert_eq!(
            rescaling_constant(&a2, &cc(&[1, 1]), &cc(&[0, 1])).unwrap(),
            rat(3, 2)
        );
        assert_eq!(
            rescaling_constant(&a2, &cc(&[1, 1]), &cc(&[1, 1])).unwrap(),
            rat(1, 1)
        );
        assert!(rescaling_constant(&a2, &cc(&[-1, 0]), &cc(&[1, 1])).is_err());
    }

    #[test]
    fn filtration_blp() {
        let md = blp();
        let qh = quantum_cohomology(&md).unwrap();
        let f = integer_filtration(&md, &cc(&[1, 1]), &qh).unwrap();
        assert_eq!(f.chain_dims, vec![3, 1, 0]);
        assert_eq!(f.n_v, 2);
        assert_eq!(f.sh_dim, 0);
        assert!(
            filtration_inclusion(&md, &cc(&[1, 1]), &cc(&[1, 1]), 1, 1, &qh).unwrap()
        );
    }

    #[test]
    fn filtration_o_minus_one() {
        let md = o_minus_one();
        let qh = quantum_cohomology(&md).unwrap();
        let f = integer_filtration(&md, &cc(&[1, 1]), &qh).unwrap();
        assert_eq!(f.chain_dims, vec![1, 0]);
        assert_eq!(f.n_v, 1);
        assert_eq!(f.sh_dim, 1);
        // E_v is spanned by x1 + T (coordinates on the basis {1, x1}).
        let t = NovikovScalar::t_power(1);
        let one = NovikovScalar::t_power(0);
        assert!(f.e_v.contains(&[t, one]));
    }

    #[test]
    fn filtration_cp2_compact() {
        let md = cp2();
        let qh = quantum_cohomology(&md).unwrap();
        let f = integer_filtration(&md, &cc(&[1, 1]), &qh).unwrap();
        assert_eq!(f.chain_dims, vec![0]);
        assert_eq!(f.n_v, 0);
        assert_eq!(f.sh_dim, 3);
    }

    #[test]
    fn filtration_inclusion_with_rescaling() {
        let md = blp();
        let qh = quantum_cohomology(&md).unwrap();
        let ws = dual_cone_hilbert_basis(&md.fan).unwrap();
        let vs = [
            cc(&[1, 1]),
            cc(&[1, 2]),
            cc(&[2, 1]),
            cc(&[1, 0]),
            cc(&[2, -1]),
        ];
        for v in &vs {
            for vp in &vs {
                let k = rescaling_constant(&ws, v, vp).unwrap();
                for p in 0..=3usize {
                    let kp = k.clone() * BigRational::from_integer(p.into());
                    let pp = kp.ceil().to_integer();
                    let pp = usize::try_from(&pp).unwrap();
                    assert!(
                        filtration_inclusion(&md, v, vp, p, pp, &qh).unwrap(),
                        "inclusion failed for v={v:?} v'={vp:?} p={p}"
                    );
                }
            }
        }
    }
}
