//! Rational functions with a factored denominator.
//!
//! The denominator is kept as a sorted list of primitive polynomial factors
//! with multiplicities. Factors are matched structurally when building common
//! denominators, which keeps the powers of a Jacobian determinant from
//! multiplying out. No multivariate gcd is attempted; instead every factor is
//! trial-divided into the numerator after each operation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::error::AlgebraError;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Q;
use super::variable::VariableId;

type Factors = Vec<(Polynomial, u32)>;

/// An exact quotient of multivariate polynomials over Q.
///
/// Invariants: every denominator factor is nonconstant with coprime integer
/// coefficients and a positive first coefficient; factors are sorted and
/// distinct; the zero value has no denominator factors.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Factors,
}

/// Splits a nonzero polynomial into `unit * Π var^e * rest` and pushes the
/// non-unit pieces onto `out` as denominator-style factors.
fn push_factors(p: &Polynomial, exp: u32, out: &mut Factors) -> Q {
    let mono = p.monomial_content();
    let rest = if mono.is_one() {
        p.clone()
    } else {
        p.div_exact(&Polynomial::monomial(mono, Q::one()))
            .expect("monomial content divides")
    };
    for (v, e) in mono.support() {
        out.push((Polynomial::var(v), e as u32 * exp));
    }
    let (unit, prim) = rest.primitive_split();
    if !prim.is_constant() {
        out.push((prim, exp));
    }
    unit.pow(exp)
}

fn merge_factors(mut factors: Factors) -> Factors {
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Factors = Vec::with_capacity(factors.len());
    for (f, e) in factors {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((g, ge)) if *g == f => *ge += e,
            _ => out.push((f, e)),
        }
    }
    out
}

fn expand(factors: &[(Polynomial, u32)]) -> Polynomial {
    factors
        .iter()
        .fold(Polynomial::one(), |acc, (f, e)| acc.mul(&f.pow(*e)))
}

impl RationalFunction {
    pub fn zero() -> RationalFunction {
        RationalFunction {
            num: Polynomial::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn constant(c: Q) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn int(n: i64) -> RationalFunction {
        RationalFunction::constant(Q::from_int(n))
    }

    pub fn var(v: VariableId) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        RationalFunction {
            num: p,
            den: Vec::new(),
        }
    }

    /// `num / den`, normalized.
    pub fn from_parts(num: Polynomial, den: &Polynomial) -> Result<RationalFunction, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut factors = Vec::new();
        let unit = push_factors(den, 1, &mut factors);
        Ok(RationalFunction::normalize(num.scale(&unit.recip()), factors))
    }

    fn normalize(mut num: Polynomial, factors: Factors) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = merge_factors(factors);
        for (f, e) in den.iter_mut() {
            while *e > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|(_, e)| *e > 0);
        RationalFunction { num, den }
    }

    /// Builds `num / Π f^e` from already-normalized factors.
    pub(crate) fn from_factored(num: Polynomial, factors: Vec<(Polynomial, u32)>) -> RationalFunction {
        RationalFunction::normalize(num, factors)
    }

    /// Least common multiple of the factored denominators of `items`.
    pub(crate) fn common_denominator<'a>(
        items: impl IntoIterator<Item = &'a RationalFunction>,
    ) -> Vec<(Polynomial, u32)> {
        let mut lcm: BTreeMap<&Polynomial, u32> = BTreeMap::new();
        for r in items {
            for (f, e) in &r.den {
                let entry = lcm.entry(f).or_insert(0);
                *entry = (*entry).max(*e);
            }
        }
        lcm.into_iter().map(|(f, e)| (f.clone(), e)).collect()
    }

    /// The numerator of `self` when written over `common`, which must be a
    /// multiple of the denominator of `self`.
    pub(crate) fn numerator_over(&self, common: &[(Polynomial, u32)]) -> Polynomial {
        let mut acc = self.num.clone();
        for (f, e) in common {
            let have = self.den.iter().find(|(g, _)| g == f).map(|(_, e)| *e).unwrap_or(0);
            debug_assert!(have <= *e);
            if *e > have {
                acc = acc.mul(&f.pow(e - have));
            }
        }
        acc
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// The denominator factors with multiplicities.
    pub fn denominator_factors(&self) -> &[(Polynomial, u32)] {
        &self.den
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> Polynomial {
        expand(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Value equality by cross-multiplication.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (a, b, _) = self.over_common_denominator(other);
        a == b
    }

    pub fn contains_var(&self, v: VariableId) -> bool {
        self.num.contains_var(v) || self.den.iter().any(|(f, _)| f.contains_var(v))
    }

    pub fn any_var(&self, pred: impl Fn(VariableId) -> bool + Copy) -> bool {
        self.num.any_var(pred) || self.den.iter().any(|(f, _)| f.any_var(pred))
    }

    pub fn denominator_any_var(&self, pred: impl Fn(VariableId) -> bool + Copy) -> bool {
        self.den.iter().any(|(f, _)| f.any_var(pred))
    }

    /// All variables occurring in numerator or denominator, ascending.
    pub fn variables(&self) -> Vec<VariableId> {
        let mut vs = self.num.variables();
        for (f, _) in &self.den {
            vs.extend(f.variables());
        }
        vs.sort();
        vs.dedup();
        vs
    }

    /// Numerators of `self` and `other` rewritten over the lcm of the two
    /// factored denominators.
    fn over_common_denominator(&self, other: &RationalFunction) -> (Polynomial, Polynomial, Factors) {
        let mut lcm: BTreeMap<&Polynomial, u32> = BTreeMap::new();
        for (f, e) in self.den.iter().chain(other.den.iter()) {
            let entry = lcm.entry(f).or_insert(0);
            *entry = (*entry).max(*e);
        }
        let cofactor = |den: &Factors| -> Polynomial {
            let mut acc = Polynomial::one();
            for (f, e) in &lcm {
                let have = den.iter().find(|(g, _)| g == *f).map(|(_, e)| *e).unwrap_or(0);
                if *e > have {
                    acc = acc.mul(&f.pow(e - have));
                }
            }
            acc
        };
        let a = self.num.mul(&cofactor(&self.den));
        let b = other.num.mul(&cofactor(&other.den));
        let common = lcm.into_iter().map(|(f, e)| (f.clone(), e)).collect();
        (a, b, common)
    }

    fn add_impl(&self, other: &RationalFunction, subtract: bool) -> RationalFunction {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.neg_impl() } else { other.clone() };
        }
        let combine = |a: &Polynomial, b: &Polynomial| {
            if subtract {
                a.sub(b)
            } else {
                a.add(b)
            }
        };
        if self.den == other.den {
            return RationalFunction::normalize(combine(&self.num, &other.num), self.den.clone());
        }
        let (a, b, common) = self.over_common_denominator(other);
        RationalFunction::normalize(combine(&a, &b), common)
    }

    fn neg_impl(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul_impl(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        // Cancel numerators against the other operand's factors before the
        // product grows.
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        let mut da = self.den.clone();
        let mut db = other.den.clone();
        for (f, e) in db.iter_mut() {
            while *e > 0 {
                match a.div_exact(f) {
                    Some(q) => {
                        a = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        for (f, e) in da.iter_mut() {
            while *e > 0 {
                match b.div_exact(f) {
                    Some(q) => {
                        b = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        da.extend(db);
        let num = a.mul(&b);
        let den = merge_factors(da);
        RationalFunction { num, den }
    }

    pub fn scale(&self, k: &Q) -> RationalFunction {
        if k.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<RationalFunction, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut factors = Vec::new();
        let unit = push_factors(&self.num, 1, &mut factors);
        let num = expand(&self.den).scale(&unit.recip());
        Ok(RationalFunction::normalize(num, factors))
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<RationalFunction, AlgebraError> {
        Ok(self.mul_impl(&other.inverse()?))
    }

    pub fn pow(&self, e: i32) -> Result<RationalFunction, AlgebraError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let e = e as u32;
        if e == 0 {
            return Ok(RationalFunction::one());
        }
        Ok(RationalFunction {
            num: self.num.pow(e),
            den: self.den.iter().map(|(f, k)| (f.clone(), k * e)).collect(),
        })
    }

    /// Partial derivative by the quotient rule on the factored denominator.
    pub fn derivative(&self, v: VariableId) -> RationalFunction {
        let dn = self.num.derivative(v);
        let moving: Vec<(usize, Polynomial)> = self
            .den
            .iter()
            .enumerate()
            .map(|(i, (f, _))| (i, f.derivative(v)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        if moving.is_empty() {
            return RationalFunction::normalize(dn, self.den.clone());
        }
        // (N/Πg^e)' = (N'·Πg - N·Σ e_i g_i' Π_{k≠i} g_k) / Π g^(e+1) over moving g.
        let mut product = Polynomial::one();
        for (i, _) in &moving {
            product = product.mul(&self.den[*i].0);
        }
        let mut correction = Polynomial::zero();
        for (i, d) in &moving {
            let mut others = Polynomial::one();
            for (k, _) in &moving {
                if k != i {
                    others = others.mul(&self.den[*k].0);
                }
            }
            let e = Q::from_int(self.den[*i].1 as i64);
            correction = correction.add(&d.mul(&others).scale(&e));
        }
        let num = dn.mul(&product).sub(&self.num.mul(&correction));
        let mut den = self.den.clone();
        for (i, _) in &moving {
            den[*i].1 += 1;
        }
        RationalFunction::normalize(num, den)
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<VariableId, RationalFunction>,
    ) -> Result<RationalFunction, AlgebraError> {
        if bindings.is_empty() || !self.variables().iter().any(|v| bindings.contains_key(v)) {
            return Ok(self.clone());
        }
        let mut powers: FxHashMap<(VariableId, u16), RationalFunction> = FxHashMap::default();
        let mut result = substitute_poly(&self.num, bindings, &mut powers);
        // Factors without bound variables are carried over unchanged; the
        // others are inverted before raising to the power so the
        // multiplicity stays visible to later cancellation.
        let mut kept = Vec::new();
        for (f, e) in &self.den {
            if !f.any_var(|v| bindings.contains_key(&v)) {
                kept.push((f.clone(), *e));
                continue;
            }
            let s = substitute_poly(f, bindings, &mut powers);
            if s.is_zero() {
                return Err(AlgebraError::SubstitutionPole);
            }
            result = &result * &s.inverse()?.pow(*e as i32)?;
        }
        if !kept.is_empty() {
            let kept = RationalFunction {
                num: Polynomial::one(),
                den: kept,
            };
            result = &result * &kept;
        }
        Ok(result)
    }

    /// Exact value at a point binding every occurring variable.
    pub fn evaluate(&self, point: &BTreeMap<VariableId, Q>) -> Result<Q, AlgebraError> {
        self.evaluate_with(&|v| point.get(&v).cloned())
    }

    pub fn evaluate_with(&self, value: &impl Fn(VariableId) -> Option<Q>) -> Result<Q, AlgebraError> {
        let mut den = Q::one();
        for (f, e) in &self.den {
            let fv = f.evaluate(value).map_err(AlgebraError::UnboundVariable)?;
            if fv.is_zero() {
                return Err(AlgebraError::EvaluationPole);
            }
            den *= &fv.pow(*e);
        }
        let nv = self.num.evaluate(value).map_err(AlgebraError::UnboundVariable)?;
        Ok(&nv / &den)
    }

    /// Groups the numerator by its monomials in the variables selected by
    /// `pred`. Only meaningful when the denominator is free of those
    /// variables; returns `None` otherwise.
    pub fn coefficients_in(
        &self,
        pred: impl Fn(VariableId) -> bool + Copy,
    ) -> Option<BTreeMap<Monomial, RationalFunction>> {
        if self.denominator_any_var(pred) {
            return None;
        }
        Some(
            self.num
                .collect_by(pred)
                .into_iter()
                .map(|(k, c)| (k, RationalFunction::normalize(c, self.den.clone())))
                .collect(),
        )
    }

    pub(crate) fn fmt_canonical(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.den.is_empty() {
            return self.num.fmt_canonical(f);
        }
        write!(f, "(")?;
        self.num.fmt_canonical(f)?;
        write!(f, ")/(")?;
        if let [(p, 1)] = self.den.as_slice() {
            p.fmt_canonical(f)?;
        } else {
            for (i, (p, e)) in self.den.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write!(f, "(")?;
                p.fmt_canonical(f)?;
                write!(f, ")")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        write!(f, ")")
    }
}

fn substitute_poly(
    p: &Polynomial,
    bindings: &BTreeMap<VariableId, RationalFunction>,
    powers: &mut FxHashMap<(VariableId, u16), RationalFunction>,
) -> RationalFunction {
    // Unbound variables stay in a polynomial part; bound ones are expanded.
    let mut by_bound: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (bound, free) = m.split(|v| bindings.contains_key(&v));
        let entry = by_bound.entry(bound).or_insert_with(Polynomial::zero);
        *entry = entry.add(&Polynomial::monomial(free, c.clone()));
    }
    let mut acc = RationalFunction::zero();
    for (bound, coeff) in by_bound {
        let mut term = RationalFunction::from_poly(coeff);
        for (v, e) in bound.support() {
            let pw = powers
                .entry((v, e))
                .or_insert_with(|| bindings[&v].pow(e as i32).expect("nonnegative power"))
                .clone();
            term = &term * &pw;
        }
        acc = &acc + &term;
    }
    acc
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &RationalFunction) -> bool {
        self.equals(other)
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> RationalFunction {
        RationalFunction::int(n)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_impl()
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_impl()
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> RationalFunction {
        iter.fold(RationalFunction::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_canonical(f)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
