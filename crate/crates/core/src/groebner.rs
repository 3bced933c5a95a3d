//! Multivariate polynomial algebra over a scalar field: Buchberger's
//! algorithm, normal forms, standard monomials, saturation, and
//! multiplication operators on finite quotients.
//!
//! Monomial orders treat higher-indexed variables as larger, so normal
//! forms rewrite high-index variables in terms of low-index ones.

use crate::scalar::Field;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroebnerError {
    #[error("InfiniteQuotient: the quotient ring is not finite-dimensional")]
    InfiniteQuotient,
    #[error("RingMismatch: polynomials live in different rings")]
    RingMismatch,
}

/// Exponent vector over the ring's variables.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the variable with the highest index
    /// is the largest.
    GrevLex,
    /// Elimination order: variables with index >= split dominate,
    /// compared grevlex, ties broken grevlex on the lower block.
    Block { split: usize },
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in 0..a.len() {
        if a[i] != b[i] {
            // smaller exponent on the smallest differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::Block { split } => {
                grevlex_cmp(&a[*split..], &b[*split..]).then_with(|| {
                    grevlex_cmp(&a[..*split], &b[..*split])
                })
            }
        }
    }
}

/// The ambient polynomial ring: arity, display names, monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub arity: usize,
    pub names: Vec<String>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(arity: usize, names: Vec<String>, order: MonomialOrder) -> Arc<Ring> {
        assert_eq!(names.len(), arity);
        Arc::new(Ring {
            arity,
            names,
            order,
        })
    }

    /// k[x1..xr] with grevlex.
    pub fn xvars(arity: usize) -> Arc<Ring> {
        let names = (1..=arity).map(|i| format!("x{i}")).collect();
        Ring::new(arity, names, MonomialOrder::GrevLex)
    }

    /// k[z1..zn] with grevlex (Laurent computations clear denominators
    /// into this ring and saturate by the product of the variables).
    pub fn zvars(arity: usize) -> Arc<Ring> {
        let names = (1..=arity).map(|i| format!("z{i}")).collect();
        Ring::new(arity, names, MonomialOrder::GrevLex)
    }
}

pub fn monomial_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn monomial_divides(d: &[u32], m: &[u32]) -> bool {
    d.iter().zip(m).all(|(&x, &y)| x <= y)
}

pub fn monomial_div(m: &[u32], d: &[u32]) -> Monomial {
    m.iter().zip(d).map(|(&x, &y)| x - y).collect()
}

pub fn monomial_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub fn monomial_degree(m: &[u32]) -> u64 {
    m.iter().map(|&e| e as u64).sum()
}

/// Polynomial with terms sorted descending by the ring's monomial order
/// and no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    pub ring: Arc<Ring>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: vec![],
        }
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, F)>) -> Self {
        let mut map: std::collections::BTreeMap<Monomial, F> = Default::default();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.arity, "monomial arity mismatch");
            let entry = map.entry(m).or_insert_with(F::zero);
            *entry = entry.add(&c);
        }
        let mut terms: Vec<(Monomial, F)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| ring.order.cmp(b, a));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: F) -> Self {
        Poly::from_terms(ring, vec![(vec![0; ring.arity], c)])
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Poly::constant(ring, F::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        let mut m = vec![0; ring.arity];
        m[i] = 1;
        Poly::from_terms(ring, vec![(m, F::one())])
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Poly::from_terms(ring, vec![(m, F::one())])
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Poly::from_terms(&self.ring, terms)
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    /// Multiply by a single term c * x^m.
    pub fn mul_term(&self, m: &[u32], c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (monomial_mul(mm, m), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut acc = vec![];
        for (m, c) in &other.terms {
            acc.extend(self.mul_term(m, c).terms);
        }
        Poly::from_terms(&self.ring, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn into_monic(self) -> Self {
        match self.lead_term() {
            None => self,
            Some((_, c)) if c.is_one() => self,
            Some((_, c)) => {
                let inv = c.inv();
                self.scale(&inv)
            }
        }
    }

    /// Substitute each variable by the given image polynomial.
    pub fn substitute<G: Field>(
        &self,
        out_ring: &Arc<Ring>,
        images: &[Poly<G>],
        lift: &impl Fn(&F) -> G,
    ) -> Poly<G> {
        assert_eq!(images.len(), self.ring.arity);
        let mut out = Poly::zero(out_ring);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_ring, lift(c));
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Map the scalars; None when the map fails on some coefficient.
    pub fn map_scalars<G: Field>(
        &self,
        out_ring: &Arc<Ring>,
        f: &impl Fn(&F) -> Option<G>,
    ) -> Option<Poly<G>> {
        let mut terms = vec![];
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Some(Poly::from_terms(out_ring, terms))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.sign_negative() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_mono = m.iter().all(|&e| e == 0);
            if is_const_mono {
                if mag.needs_parens() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            let mut wrote_coeff = false;
            if !mag.is_one() {
                if mag.needs_parens() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                wrote_coeff = true;
            }
            let mut first_var = !wrote_coeff;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "{}", self.ring.names[i])?;
                } else {
                    write!(f, "{}^{}", self.ring.names[i], e)?;
                }
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis: monic generators, no lead monomial divides
/// another, every generator fully reduced against the others, sorted by
/// ascending lead monomial. Reduced bases are canonical for the ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    pub ring: Arc<Ring>,
    gens: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn contains_one(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant())
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        normal_form(p, self).is_zero()
    }
}

fn reduce_full<F: Field>(p: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let ring = p.ring.clone();
    let mut work = p.clone();
    let mut remainder: Vec<(Monomial, F)> = vec![];
    'outer: while let Some((lm, lc)) = work.lead_term() {
        let lm = lm.clone();
        let lc = lc.clone();
        for g in basis {
            let Some((glm, glc)) = g.lead_term() else { continue };
            if monomial_divides(glm, &lm) {
                let q = monomial_div(&lm, glm);
                let c = lc.div(glc);
                work = work.sub(&g.mul_term(&q, &c));
                continue 'outer;
            }
        }
        remainder.push((lm.clone(), lc));
        work.terms.remove(0);
    }
    Poly::from_terms(&ring, remainder)
}

/// Remainder of full multivariate division by the basis; zero exactly on
/// ideal members.
pub fn normal_form<F: Field>(p: &Poly<F>, gb: &GroebnerBasis<F>) -> Poly<F> {
    assert_eq!(p.ring, gb.ring, "ring mismatch");
    reduce_full(p, &gb.gens)
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (fm, fc) = f.lead_term().unwrap();
    let (gm, gc) = g.lead_term().unwrap();
    let l = monomial_lcm(fm, gm);
    let a = f.mul_term(&monomial_div(&l, fm), &fc.inv());
    let b = g.mul_term(&monomial_div(&l, gm), &gc.inv());
    a.sub(&b)
}

/// Buchberger's algorithm with the product and chain criteria, followed
/// by full autoreduction. Output is the canonical reduced basis.
pub fn buchberger<F: Field>(gens: &[Poly<F>], ring: &Arc<Ring>) -> GroebnerBasis<F> {
    let mut basis: Vec<Poly<F>> = gens
        .iter()
        .inspect(|g| assert_eq!(&g.ring, ring, "ring mismatch"))
        .filter(|g| !g.is_zero())
        .map(|g| g.clone().into_monic())
        .collect();
    let mut pairs: Vec<(usize, usize)> = vec![];
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // Normal selection: minimal lcm degree, ties by monomial order,
        // then by index for determinism.
        let key = |&(i, j): &(usize, usize)| {
            let l = monomial_lcm(
                basis[i].lead_monomial().unwrap(),
                basis[j].lead_monomial().unwrap(),
            );
            (monomial_degree(&l), l, i, j)
        };
        let mut best = 0;
        let mut best_key = key(&pairs[0]);
        for (idx, p) in pairs.iter().enumerate().skip(1) {
            let k = key(p);
            let better = match k.0.cmp(&best_key.0) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match ring.order.cmp(&k.1, &best_key.1) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => (k.2, k.3) < (best_key.2, best_key.3),
                },
            };
            if better {
                best = idx;
                best_key = k;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let fm = basis[i].lead_monomial().unwrap().clone();
        let gm = basis[j].lead_monomial().unwrap().clone();
        let l = monomial_lcm(&fm, &gm);
        // Product criterion: coprime leads reduce to zero.
        if l == monomial_mul(&fm, &gm) {
            continue;
        }
        // Chain criterion: a third generator dividing the lcm whose pairs
        // with both are already settled makes this pair redundant.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && monomial_divides(basis[k].lead_monomial().unwrap(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j]);
        let r = reduce_full(&s, &basis);
        if !r.is_zero() {
            let r = r.into_monic();
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pairs.push((k, new));
            }
        }
    }
    // Minimalize: drop generators whose lead is divisible by another lead.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let li = basis[i].lead_monomial().unwrap();
            let lj = basis[j].lead_monomial().unwrap();
            if monomial_divides(li, lj) && (li != lj || i < j) {
                keep[j] = false;
            }
        }
    }
    let mut minimal: Vec<Poly<F>> = basis
        .into_iter()
        .zip(keep)
        .filter(|&(_, k)| k)
        .map(|(g, _)| g)
        .collect();
    // Autoreduce tails.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Poly<F>> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(&minimal[i], &others).into_monic();
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|g| !g.is_zero());
    minimal.sort_by(|a, b| {
        ring.order
            .cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap())
    });
    GroebnerBasis {
        ring: ring.clone(),
        gens: minimal,
    }
}

/// Basis of the quotient by an ideal: the monomials outside the lead
/// ideal, or the marker for an infinite-dimensional quotient.
#[derive(Clone, Debug, PartialEq)]
pub enum QuotientBasis {
    Finite(Vec<Monomial>),
    Infinite,
}

impl QuotientBasis {
    pub fn dim(&self) -> Option<usize> {
        match self {
            QuotientBasis::Finite(v) => Some(v.len()),
            QuotientBasis::Infinite => None,
        }
    }
}

pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>) -> QuotientBasis {
    let arity = gb.ring.arity;
    if gb.contains_one() {
        return QuotientBasis::Finite(vec![]);
    }
    if arity == 0 {
        return QuotientBasis::Finite(vec![vec![]]);
    }
    let leads: Vec<&Monomial> = gb.gens.iter().filter_map(|g| g.lead_monomial()).collect();
    // Finite iff every variable has a pure-power lead monomial.
    let mut bound = vec![0u32; arity];
    for i in 0..arity {
        let mut best: Option<u32> = None;
        for m in &leads {
            if m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0) {
                best = Some(best.map_or(m[i], |b: u32| b.min(m[i])));
            }
        }
        match best {
            Some(k) => bound[i] = k,
            None => return QuotientBasis::Infinite,
        }
    }
    let mut out: Vec<Monomial> = vec![];
    let mut cursor = vec![0u32; arity];
    'enumerate: loop {
        if !leads.iter().any(|l| monomial_divides(l, &cursor)) {
            out.push(cursor.clone());
        }
        for i in 0..arity {
            if cursor[i] + 1 < bound[i] {
                cursor[i] += 1;
                continue 'enumerate;
            }
            cursor[i] = 0;
        }
        break;
    }
    out.sort_by(|a, b| gb.ring.order.cmp(a, b));
    QuotientBasis::Finite(out)
}

/// Gröbner basis of the saturation (I : m^infinity), computed by
/// adjoining an auxiliary top variable y with the relation 1 - y*m and
/// eliminating it through a block order.
pub fn saturate<F: Field>(
    gens: &[Poly<F>],
    m: &Monomial,
    ring: &Arc<Ring>,
) -> GroebnerBasis<F> {
    assert!(
        m.iter().any(|&e| e > 0),
        "saturation monomial must not be 1"
    );
    assert_eq!(m.len(), ring.arity);
    let mut names = ring.names.clone();
    names.push("y_sat".to_string());
    let ext = Ring::new(
        ring.arity + 1,
        names,
        MonomialOrder::Block { split: ring.arity },
    );
    let lift = |p: &Poly<F>| -> Poly<F> {
        Poly::from_terms(
            &ext,
            p.terms()
                .iter()
                .map(|(mm, c)| {
                    let mut e = mm.clone();
                    e.push(0);
                    (e, c.clone())
                })
                .collect(),
        )
    };
    let mut ext_gens: Vec<Poly<F>> = gens.iter().map(lift).collect();
    let mut ym = m.clone();
    ym.push(1);
    let one = Poly::one(&ext);
    ext_gens.push(one.sub(&Poly::monomial(&ext, ym)));
    let gb = buchberger(&ext_gens, &ext);
    let kept: Vec<Poly<F>> = gb
        .gens
        .iter()
        .filter(|g| g.terms().iter().all(|(mm, _)| mm[ring.arity] == 0))
        .map(|g| {
            Poly::from_terms(
                ring,
                g.terms()
                    .iter()
                    .map(|(mm, c)| (mm[..ring.arity].to_vec(), c.clone()))
                    .collect(),
            )
        })
        .collect();
    buchberger(&kept, ring)
}

/// Matrix of multiplication by p on the standard-monomial basis of a
/// finite quotient; columns follow the basis order.
pub fn multiplication_matrix<F: Field>(
    gb: &GroebnerBasis<F>,
    p: &Poly<F>,
) -> Result<crate::matrix::FieldMatrix<F>, GroebnerError> {
    if p.ring != gb.ring {
        return Err(GroebnerError::RingMismatch);
    }
    let QuotientBasis::Finite(basis) = standard_monomials(gb) else {
        return Err(GroebnerError::InfiniteQuotient);
    };
    let d = basis.len();
    let mut mat = crate::matrix::FieldMatrix::<F>::zero(d, d);
    for (j, b) in basis.iter().enumerate() {
        let prod = p.mul(&Poly::monomial(&gb.ring, b.clone()));
        let nf = normal_form(&prod, gb);
        for (m, c) in nf.terms() {
            let i = basis
                .iter()
                .position(|bm| bm == m)
                .expect("normal form lives in the standard basis");
            *mat.at_mut(i, j) = c.clone();
        }
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::nilpotency_index;
    use crate::scalar::{rat, NovikovScalar};

    fn ns(n: i64) -> NovikovScalar {
        NovikovScalar::constant(rat(n, 1))
    }

    fn t_pow(k: i64) -> NovikovScalar {
        NovikovScalar::var_power(k)
    }

    fn mono(ring: &Arc<Ring>, exps: &[u32]) -> Monomial {
        assert_eq!(exps.len(), ring.arity);
        exps.to_vec()
    }

    /// The reduced presentation ideal of the blown-up surface example:
    /// x1*x2 + T*x1, x1^2, x2^2 + T*x1 - T^2 in k[x1, x2].
    fn blp_reduced(ring: &Arc<Ring>) -> Vec<Poly<NovikovScalar>> {
        let g1 = Poly::from_terms(
            ring,
            vec![
                (mono(ring, &[1, 1]), ns(1)),
                (mono(ring, &[1, 0]), t_pow(1)),
            ],
        );
        let g2 = Poly::from_terms(ring, vec![(mono(ring, &[2, 0]), ns(1))]);
        let g3 = Poly::from_terms(
            ring,
            vec![
                (mono(ring, &[0, 2]), ns(1)),
                (mono(ring, &[1, 0]), t_pow(1)),
                (mono(ring, &[0, 0]), t_pow(2).neg()),
            ],
        );
        vec![g1, g2, g3]
    }

    #[test]
    fn order_matches_elimination_convention() {
        let ring = Ring::xvars(4);
        // x3 > x1 and x4 > x2 so linear relations rewrite high variables.
        let x1 = mono(&ring, &[1, 0, 0, 0]);
        let x3 = mono(&ring, &[0, 0, 1, 0]);
        assert_eq!(ring.order.cmp(&x3, &x1), Ordering::Greater);
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let ring = Ring::xvars(1);
        let x = Poly::<NovikovScalar>::var(&ring, 0);
        let gb = buchberger(std::slice::from_ref(&x), &ring);
        assert_eq!(gb.generators(), &[x]);
    }

    #[test]
    fn blp_standard_monomials() {
        let ring = Ring::xvars(2);
        let gb = buchberger(&blp_reduced(&ring), &ring);
        let QuotientBasis::Finite(basis) = standard_monomials(&gb) else {
            panic!("expected finite quotient");
        };
        assert_eq!(
            basis,
            vec![
                mono(&ring, &[0, 0]),
                mono(&ring, &[1, 0]),
                mono(&ring, &[0, 1])
            ]
        );
        // normal_form(x2^2) = T^2 - T*x1
        let x2sq = Poly::monomial(&ring, mono(&ring, &[0, 2]));
        let nf = normal_form(&x2sq, &gb);
        assert_eq!(format!("{nf}"), "-T*x1 + T^2");
        for g in gb.generators() {
            assert!(normal_form(g, &gb).is_zero());
        }
    }

    #[test]
    fn infinite_quotient_detected() {
        let ring = Ring::xvars(3);
        let g1 = Poly::from_terms(
            &ring,
            vec![
                (mono(&ring, &[1, 0, 0]), ns(1)),
                (mono(&ring, &[0, 1, 0]), ns(-1)),
            ],
        );
        let g2 = Poly::from_terms(
            &ring,
            vec![
                (mono(&ring, &[1, 1, 0]), ns(1)),
                (mono(&ring, &[0, 0, 1]), t_pow(1).neg()),
            ],
        );
        let gb = buchberger(&[g1, g2], &ring);
        assert_eq!(standard_monomials(&gb), QuotientBasis::Infinite);

        let zero_ideal = buchberger::<NovikovScalar>(&[], &Ring::xvars(1));
        assert_eq!(standard_monomials(&zero_ideal), QuotientBasis::Infinite);

        let ring1 = Ring::xvars(1);
        let xsq = Poly::<NovikovScalar>::monomial(&ring1, vec![2]);
        let gb = buchberger(&[xsq], &ring1);
        let QuotientBasis::Finite(basis) = standard_monomials(&gb) else {
            panic!()
        };
        assert_eq!(basis, vec![vec![0], vec![1]]);
    }

    #[test]
    fn full_blp_ideal_rewrites_x3() {
        // Linear relations x1 + x3 and x2 + x3 - x4 in four variables.
        let ring = Ring::xvars(4);
        let l1 = Poly::from_terms(
            &ring,
            vec![
                (mono(&ring, &[1, 0, 0, 0]), ns(1)),
                (mono(&ring, &[0, 0, 1, 0]), ns(1)),
            ],
        );
        let l2 = Poly::from_terms(
            &ring,
            vec![
                (mono(&ring, &[0, 1, 0, 0]), ns(1)),
                (mono(&ring, &[0, 0, 1, 0]), ns(1)),
                (mono(&ring, &[0, 0, 0, 1]), ns(-1)),
            ],
        );
        let gb = buchberger(&[l1, l2], &ring);
        let x3 = Poly::monomial(&ring, mono(&ring, &[0, 0, 1, 0]));
        let nf = normal_form(&x3, &gb);
        assert_eq!(format!("{nf}"), "-x1");
    }

    #[test]
    fn saturation_examples() {
        // (x*y) : x^inf = (y)
        let ring = Ring::xvars(2);
        let xy = Poly::<NovikovScalar>::monomial(&ring, mono(&ring, &[1, 1]));
        let gb = saturate(&[xy], &mono(&ring, &[1, 0]), &ring);
        assert_eq!(gb.generators().len(), 1);
        assert_eq!(format!("{}", gb.generators()[0]), "x2");

        // Blp quantum ideal : (x1 x2)^inf = (1)
        let gens = blp_reduced(&ring);
        let gb = saturate(&gens, &mono(&ring, &[1, 1]), &ring);
        assert!(gb.contains_one());

        // : x2^inf stays proper
        let gb = saturate(&gens, &mono(&ring, &[0, 1]), &ring);
        assert!(!gb.contains_one());
    }

    #[test]
    fn saturation_is_idempotent_and_grows() {
        let ring = Ring::xvars(2);
        let gens = blp_reduced(&ring);
        let m = mono(&ring, &[0, 1]);
        let s1 = saturate(&gens, &m, &ring);
        let s2 = saturate(s1.generators(), &m, &ring);
        assert_eq!(s1, s2);
        let base = buchberger(&gens, &ring);
        for g in base.generators() {
            assert!(s1.contains(g));
        }
    }

    #[test]
    fn multiplication_matrices() {
        let ring = Ring::xvars(2);
        let gb = buchberger(&blp_reduced(&ring), &ring);
        let one = Poly::one(&ring);
        let id = multiplication_matrix(&gb, &one).unwrap();
        assert_eq!(id, crate::matrix::FieldMatrix::identity(3));

        let x1 = Poly::var(&ring, 0);
        let m = multiplication_matrix(&gb, &x1).unwrap();
        assert_eq!(nilpotency_index(&m), Some(2));

        // Projective plane quantum relation x^3 - T^3: companion cubes to
        // T^3 times the identity.
        let ring1 = Ring::xvars(1);
        let rel = Poly::from_terms(
            &ring1,
            vec![(vec![3], ns(1)), (vec![0], t_pow(3).neg())],
        );
        let gb = buchberger(&[rel], &ring1);
        let m = multiplication_matrix(&gb, &Poly::var(&ring1, 0)).unwrap();
        let m3 = m.pow(3);
        let expected = crate::matrix::FieldMatrix::identity(3).scale(&t_pow(3));
        assert_eq!(m3, expected);
    }

    #[test]
    fn basis_independent_of_generator_order() {
        let ring = Ring::xvars(2);
        let gens = blp_reduced(&ring);
        let gb1 = buchberger(&gens, &ring);
        let mut rev = gens.clone();
        rev.reverse();
        let gb2 = buchberger(&rev, &ring);
        assert_eq!(gb1, gb2);
    }

    #[test]
    fn quotient_arithmetic_is_associative() {
        let ring = Ring::xvars(2);
        let gb = buchberger(&blp_reduced(&ring), &ring);
        let a = Poly::from_terms(
            &ring,
            vec![(mono(&ring, &[1, 0]), t_pow(1)), (mono(&ring, &[0, 1]), ns(2))],
        );
        let b = Poly::var(&ring, 0);
        let c = Poly::from_terms(
            &ring,
            vec![(mono(&ring, &[1, 1]), ns(1)), (mono(&ring, &[0, 0]), ns(3))],
        );
        let ab_c = normal_form(&normal_form(&a.mul(&b), &gb).mul(&c), &gb);
        let a_bc = normal_form(&a.mul(&normal_form(&b.mul(&c), &gb)), &gb);
        assert_eq!(ab_c, a_bc);
    }
}
