//! Exact rational polyhedral cones: the iterative double-description
//! conversion from halfspace form {x : <a_i, x> >= 0} to generator form
//! (lineality basis plus extreme rays), over arbitrary-precision integers.

use crate::matrix::{hermite_normal_form, IntMatrix};
use num::{BigInt, Integer, Signed, Zero};

/// Generator form of a rational polyhedral cone: the cone is
/// span(lineality) + nonnegative span(rays). Rays are primitive and
/// sorted; the lineality basis is in Hermite normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeRep {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl ConeRep {
    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }
}

/// Divide by the gcd of the entries; zero vectors stay zero.
pub fn primitivize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for e in v.iter() {
        g = g.gcd(e);
    }
    if g.is_zero() || g == BigInt::from(1) {
        return;
    }
    for e in v.iter_mut() {
        *e = &*e / &g;
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_i64(a: &[i64], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(&x, y)| BigInt::from(x) * y).sum()
}

struct Ray {
    v: Vec<BigInt>,
    /// Indices of processed constraints tight at this ray.
    tight: Vec<usize>,
}

/// Double description for {x in R^dim : <a, x> >= 0 for each halfspace a}.
pub fn dual_description(halfspaces: &[Vec<i64>], dim: usize) -> ConeRep {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    let mut rays: Vec<Ray> = vec![];
    let mut processed: Vec<&Vec<i64>> = vec![];

    for a in halfspaces {
        assert_eq!(a.len(), dim, "halfspace dimension mismatch");
        let idx = processed.len();
        let lin_vals: Vec<BigInt> = lineality.iter().map(|g| dot_i64(a, g)).collect();
        if let Some(gi) = lin_vals.iter().position(|v| !v.is_zero()) {
            // Release one lineality generator across the new wall.
            let mut g = lineality.remove(gi);
            let mut gval = lin_vals[gi].clone();
            if gval.is_negative() {
                for e in g.iter_mut() {
                    *e = -e.clone();
                }
                gval = -gval;
            }
            for (j, l) in lineality.iter_mut().enumerate() {
                let jj = if j < gi { j } else { j + 1 };
                let lv = &lin_vals[jj];
                if lv.is_zero() {
                    continue;
                }
                let combined: Vec<BigInt> = l
                    .iter()
                    .zip(&g)
                    .map(|(le, ge)| le * &gval - lv * ge)
                    .collect();
                *l = combined;
                primitivize(l);
            }
            for r in rays.iter_mut() {
                let rv = dot_i64(a, &r.v);
                if rv.is_zero() {
                    r.tight.push(idx);
                    continue;
                }
                let combined: Vec<BigInt> = r
                    .v
                    .iter()
                    .zip(&g)
                    .map(|(re, ge)| re * &gval - &rv * ge)
                    .collect();
                r.v = combined;
                primitivize(&mut r.v);
                r.tight.push(idx);
            }
            primitivize(&mut g);
            rays.push(Ray {
                v: g,
                tight: (0..idx).collect(),
            });
        } else {
            // Classic DD step: split rays by the sign of <a, .>.
            let vals: Vec<BigInt> = rays.iter().map(|r| dot_i64(a, &r.v)).collect();
            let has_neg = vals.iter().any(|v| v.is_negative());
            if !has_neg {
                for (r, v) in rays.iter_mut().zip(&vals) {
                    if v.is_zero() {
                        r.tight.push(idx);
                    }
                }
                processed.push(a);
                continue;
            }
            let mut new_rays: Vec<Ray> = vec![];
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    let mut tight = r.tight.clone();
                    if v.is_zero() {
                        tight.push(idx);
                    }
                    new_rays.push(Ray {
                        v: r.v.clone(),
                        tight,
                    });
                }
            }
            for (pi, pv) in vals.iter().enumerate() {
                if !pv.is_positive() {
                    continue;
                }
                for (ni, nv) in vals.iter().enumerate() {
                    if !nv.is_negative() {
                        continue;
                    }
                    // Fukuda-Prodon adjacency: keep (p, n) only when no
                    // third ray is tight on all constraints tight at both.
                    let common: Vec<usize> = rays[pi]
                        .tight
                        .iter()
                        .filter(|t| rays[ni].tight.contains(t))
                        .cloned()
                        .collect();
                    let dominated = rays.iter().enumerate().any(|(oi, o)| {
                        oi != pi && oi != ni && common.iter().all(|t| o.tight.contains(t))
                    });
                    if dominated {
                        continue;
                    }
                    let mut v: Vec<BigInt> = rays[pi]
                        .v
                        .iter()
                        .zip(&rays[ni].v)
                        .map(|(pe, ne)| pv * ne - nv * pe)
                        .collect();
                    primitivize(&mut v);
                    if v.iter().all(|e| e.is_zero()) {
                        continue;
                    }
                    if new_rays.iter().any(|r| r.v == v) {
                        continue;
                    }
                    let mut tight = common;
                    tight.push(idx);
                    new_rays.push(Ray { v, tight });
                }
            }
            rays = new_rays;
        }
        processed.push(a);
    }

    let mut out_rays: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out_rays.sort();
    out_rays.dedup();
    let lineality = canonical_lattice_basis(lineality, dim);
    ConeRep {
        lineality,
        rays: out_rays,
    }
}

fn canonical_lattice_basis(vectors: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return vec![];
    }
    let rows = vectors.len();
    let entries: Vec<BigInt> = vectors.into_iter().flatten().collect();
    let m = IntMatrix::new(rows, dim, entries);
    let (h, _) = hermite_normal_form(&m);
    (0..h.rows)
        .map(|r| h.row(r).to_vec())
        .filter(|row| row.iter().any(|e| !e.is_zero()))
        .collect()
}
