//! Exact scalar arithmetic: arbitrary-precision rationals and univariate
//! rational function fields, composable into towers.
//!
//! The engine works over the field of rational functions in the formal
//! variable `T` with rational coefficients. Equivariant computations extend
//! the coefficients once more by a rational-function parameter `u`.

use num::{BigRational, One, Signed, Zero};
use std::fmt;

/// Minimal field interface used by polynomials, matrices and Gröbner bases.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero; callers guard.
    fn inv(&self) -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rat(q: &BigRational) -> Self;
    /// Inverse of `from_rat` on constants; None when the value is not a
    /// base rational.
    fn as_rat(&self) -> Option<BigRational>;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Leading sign, pulled out by renderers so sums read `a - b`.
    fn sign_negative(&self) -> bool;
    /// Whether a renderer must parenthesize this value inside a product.
    fn needs_parens(&self) -> bool;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero rational");
        self.recip()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn from_rat(q: &BigRational) -> Self {
        q.clone()
    }
    fn as_rat(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn sign_negative(&self) -> bool {
        self.is_negative()
    }
    fn needs_parens(&self) -> bool {
        false
    }
}

/// Dense univariate polynomial over a field, coefficients ascending,
/// no trailing zeros (zero polynomial has an empty coefficient list).
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// c * X^k
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> &F {
        self.coeffs.last().expect("lead of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&other.coeff(k)));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "univariate division by zero");
        let mut r = self.clone();
        let mut q = UniPoly::zero();
        let dl = d.lead().clone();
        let dd = d.degree().unwrap();
        while !r.is_zero() && r.degree().unwrap() >= dd {
            let shift = r.degree().unwrap() - dd;
            let c = r.lead().div(&dl);
            let t = UniPoly::monomial(c, shift);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        (q, r)
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0. Remainders are
    /// rescaled monic at every step to keep coefficient growth in check.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone().into_monic();
        let mut b = b.clone().into_monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.into_monic();
        }
        a
    }

    pub fn into_monic(self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self;
        }
        let inv = self.lead().inv();
        self.scale(&inv)
    }

    /// Constant term; this is evaluation at 0.
    pub fn eval_at_zero(&self) -> F {
        self.coeff(0)
    }

    fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: char) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.sign_negative() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
                if k == 1 {
                    write!(f, "{var}")
                } else {
                    write!(f, "{var}^{k}")
                }
            };
            if k == 0 {
                if mag.needs_parens() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else if mag.is_one() {
                power(f)?;
            } else if mag.needs_parens() {
                write!(f, "({mag})*")?;
                power(f)?;
            } else {
                write!(f, "{mag}*")?;
                power(f)?;
            }
        }
        Ok(())
    }
}

/// Rational function p/q in one formal variable over a field.
///
/// Invariants: the denominator is monic and nonzero, gcd(p, q) = 1, and
/// zero is stored as 0/1.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field, const VAR: char> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

/// The Novikov scalar field: rational functions in the formal variable `T`.
pub type NovikovScalar = RatFunc<BigRational, 'T'>;
/// Rational functions in the equivariant parameter `u`.
pub type URat = RatFunc<BigRational, 'u'>;
/// Scalars for equivariant presentations: rational functions in `T` over `u`.
pub type EqScalar = RatFunc<URat, 'T'>;

impl<F: Field, const VAR: char> RatFunc<F, VAR> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead_inv = den.lead().inv();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    /// The formal variable raised to an integer power, e.g. `T^-3`.
    pub fn var_power(k: i64) -> Self {
        if k >= 0 {
            RatFunc::from_poly(UniPoly::monomial(F::one(), k as usize))
        } else {
            RatFunc {
                num: UniPoly::one(),
                den: UniPoly::monomial(F::one(), (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// When this scalar is `c * VAR^k / 1` returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(F, usize)> {
        if !self.den.is_one() || self.num.is_zero() {
            return None;
        }
        let d = self.num.degree().unwrap();
        for k in 0..d {
            if !self.num.coeff(k).is_zero() {
                return None;
            }
        }
        Some((self.num.lead().clone(), d))
    }

    pub fn as_constant(&self) -> Option<F> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.degree() {
            None => Some(F::zero()),
            Some(0) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    /// Rebuild with mapped coefficients; `None` propagates failure
    /// (used for specializations that may hit a pole).
    pub fn map_coeffs<G: Field>(&self, f: &impl Fn(&F) -> Option<G>) -> Option<RatFunc<G, VAR>> {
        let map_poly = |p: &UniPoly<F>| -> Option<UniPoly<G>> {
            let mut out = Vec::with_capacity(p.coeffs().len());
            for c in p.coeffs() {
                out.push(f(c)?);
            }
            Some(UniPoly::from_coeffs(out))
        };
        let num = map_poly(&self.num)?;
        let den = map_poly(&self.den)?;
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(num, den))
    }
}

impl URat {
    /// Evaluation at u = 0; `None` when the denominator vanishes there.
    pub fn eval_at_zero(&self) -> Option<BigRational> {
        let d = self.den.eval_at_zero();
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval_at_zero() / d)
    }
}

impl EqScalar {
    /// Specialize the equivariant parameter u to 0.
    pub fn specialize_u0(&self) -> Option<NovikovScalar> {
        self.map_coeffs(&|c: &URat| c.eval_at_zero())
    }

    /// Embed a Novikov scalar as a u-constant equivariant scalar.
    pub fn from_novikov(s: &NovikovScalar) -> Self {
        s.map_coeffs(&|c: &BigRational| Some(URat::constant(c.clone())))
            .expect("constant embedding cannot fail")
    }
}

impl<F: Field, const VAR: char> Field for RatFunc<F, VAR> {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.add(&other.num),
                den: UniPoly::one(),
            };
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.num),
                den: UniPoly::one(),
            };
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_int(n: i64) -> Self {
        RatFunc::constant(F::from_int(n))
    }
    fn from_rat(q: &BigRational) -> Self {
        RatFunc::constant(F::from_rat(q))
    }
    fn as_rat(&self) -> Option<BigRational> {
        self.as_constant().and_then(|c| c.as_rat())
    }
    fn sign_negative(&self) -> bool {
        !self.num.is_zero() && self.num.lead().sign_negative()
    }
    fn needs_parens(&self) -> bool {
        if !self.den.is_one() {
            return true;
        }
        match self.num.degree() {
            None => false,
            Some(0) => self.num.lead().needs_parens(),
            Some(_) => {
                self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
                    || self.num.lead().needs_parens()
                    || !self.num.lead().is_one()
            }
        }
    }
}

impl<F: Field, const VAR: char> fmt::Display for RatFunc<F, VAR> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_with_var(f, VAR)
        } else {
            write!(f, "(")?;
            self.num.fmt_with_var(f, VAR)?;
            write!(f, ")/(")?;
            self.den.fmt_with_var(f, VAR)?;
            write!(f, ")")
        }
    }
}

/// Fields that contain the Novikov variable T: integer powers of T and
/// the detection of pure T-monomial scalars.
pub trait TPower: Field {
    fn t_power(k: i64) -> Self;
    /// When the scalar is c * T^k with c a T-free unit, return (k, is_one)
    /// where is_one records whether c = 1; None otherwise.
    fn t_monomial_degree(&self) -> Option<i64>;
}

impl<F: Field> TPower for RatFunc<F, 'T'> {
    fn t_power(k: i64) -> Self {
        Self::var_power(k)
    }
    fn t_monomial_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if self.den.is_one() {
            self.as_monomial().map(|(_, k)| k as i64)
        } else {
            // 1/T^k denominators count as negative degree when the
            // numerator is a constant.
            let (_, dk) = self.inv().as_monomial()?;
            if self.num.degree() == Some(0) {
                Some(-(dk as i64))
            } else {
                None
            }
        }
    }
}

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(coeffs: &[i64]) -> UniPoly<BigRational> {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (T^2 - 1) / (T - 1) = T + 1
        let num = tp(&[-1, 0, 1]);
        let den = tp(&[-1, 1]);
        let (q, r) = num.divrem(&den);
        assert_eq!(q, tp(&[1, 1]));
        assert!(r.is_zero());
        let g = UniPoly::gcd(&num, &tp(&[1, 1]));
        assert_eq!(g, tp(&[1, 1]));
    }

    #[test]
    fn ratfunc_normalizes() {
        // (2T^2 - 2) / (2T - 2) reduces to T + 1 with monic denominator.
        let f = NovikovScalar::new(tp(&[-2, 0, 2]), tp(&[-2, 2]));
        assert!(f.is_polynomial());
        assert_eq!(f.numerator(), &tp(&[1, 1]));
        assert_eq!(format!("{f}"), "T + 1");
    }

    #[test]
    fn var_power_negative() {
        let f = NovikovScalar::var_power(-3);
        assert_eq!(format!("{f}"), "(1)/(T^3)");
        let g = f.mul(&NovikovScalar::var_power(3));
        assert!(g.is_one());
    }

    #[test]
    fn field_axioms_spot() {
        let a = NovikovScalar::new(tp(&[1, 2]), tp(&[3, 0, 1]));
        let b = NovikovScalar::new(tp(&[-1, 0, 5]), tp(&[2, 1]));
        assert!(a.mul(&b).mul(&a.inv()).sub(&b).is_zero());
        let assoc = a.add(&b).add(&a).sub(&a.add(&b.add(&a)));
        assert!(assoc.is_zero());
    }

    #[test]
    fn eq_scalar_specializes() {
        // (u + 1) * T  ->  T at u = 0.
        let c = URat::new(
            UniPoly::from_coeffs(vec![rat(1, 1), rat(1, 1)]),
            UniPoly::one(),
        );
        let s = EqScalar::from_poly(UniPoly::monomial(c, 1));
        let t0 = s.specialize_u0().unwrap();
        assert_eq!(format!("{t0}"), "T");
        // 1/u has no value at u = 0.
        let pole = EqScalar::constant(URat::var_power(-1));
        assert!(pole.specialize_u0().is_none());
    }

    #[test]
    fn rendering() {
        let s = NovikovScalar::from_poly(tp(&[0, -1, 1]));
        assert_eq!(format!("{s}"), "T^2 - T");
        let c = NovikovScalar::constant(rat(-3, 2));
        assert_eq!(format!("{c}"), "-3/2");
    }
}
