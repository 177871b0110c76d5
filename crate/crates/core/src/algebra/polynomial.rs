//! Sparse multivariate polynomials over Q.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::rational::{content, Q};
use super::variable::VariableId;

/// A sparse polynomial. Terms are kept sorted ascending in the graded
/// monomial order with no zero coefficients, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Q)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Q::one())
    }

    pub fn constant(c: Q) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: VariableId) -> Polynomial {
        Polynomial {
            terms: vec![(Monomial::var(v), Q::one())],
        }
    }

    pub fn monomial(m: Monomial, c: Q) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Polynomial {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The term that is largest in the monomial order.
    pub fn leading(&self) -> Option<&(Monomial, Q)> {
        self.terms.last()
    }

    /// The first term in iteration (and print) order.
    pub fn trailing(&self) -> Option<&(Monomial, Q)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VariableId) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: VariableId) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn any_var(&self, pred: impl Fn(VariableId) -> bool) -> bool {
        self.terms.iter().any(|(m, _)| m.support().any(|(v, _)| pred(v)))
    }

    /// All variables that occur, ascending.
    pub fn variables(&self) -> Vec<VariableId> {
        let mut mask = Monomial::one();
        for (m, _) in &self.terms {
            for (v, _) in m.support() {
                mask = mask.with_exp(v, 1);
            }
        }
        mask.support().map(|(v, _)| v).collect()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, k: &Q) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        // Multiplication by a monomial preserves the order.
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect(),
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut acc: FxHashMap<Monomial, Q> =
            FxHashMap::with_capacity_and_hasher(small.len() * large.len(), Default::default());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        Polynomial { terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, v: VariableId) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let lowered = m.lower(v).expect("exponent checked");
            terms.push((lowered, c * &Q::from_int(e as i64)));
        }
        // Dividing by a monomial preserves the order and distinctness.
        Polynomial { terms }
    }

    /// Evaluates with a binding for every variable that occurs.
    pub fn evaluate(&self, value: &impl Fn(VariableId) -> Option<Q>) -> Result<Q, VariableId> {
        let mut total = Q::zero();
        let mut cache: FxHashMap<(VariableId, u16), Q> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let base = value(v).ok_or(v)?;
                        let p = base.pow(e as u32);
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                t *= &p;
            }
            total += &t;
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        // Cheap necessary condition: per-variable degrees.
        for v in divisor.variables() {
            if self.degree_in(v) < divisor.degree_in(v) {
                return None;
            }
        }
        if divisor.len() == 1 {
            let (dm, dc) = &divisor.terms[0];
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c * &inv));
            }
            return Some(Polynomial { terms });
        }
        let (lm, lc) = divisor.leading().expect("nonzero divisor");
        let lc_inv = lc.recip();
        let mut rem: BTreeMap<Monomial, Q> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            // If the divisor divides, every intermediate remainder stays a
            // multiple of it, so its leading term must be divisible.
            let qm = rm.div(lm)?;
            let qc = &rc * &lc_inv;
            for (dm, dc) in &divisor.terms {
                let m = dm.mul(&qm);
                let delta = dc * &qc;
                let remove = match rem.get_mut(&m) {
                    Some(v) => {
                        *v -= &delta;
                        v.is_zero()
                    }
                    None => {
                        rem.insert(m, -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&m);
                }
            }
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Some(Polynomial { terms: quotient })
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Q {
        content(self.terms.iter().map(|(_, c)| c))
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.iter();
        let first = match iter.next() {
            Some((m, _)) => *m,
            None => return Monomial::one(),
        };
        iter.fold(first, |g, (m, _)| g.gcd(m))
    }

    /// Splits `self = unit · primitive` where `primitive` has coprime integer
    /// coefficients and a positive first (trailing) coefficient.
    pub fn primitive_split(&self) -> (Q, Polynomial) {
        if self.is_zero() {
            return (Q::one(), Polynomial::zero());
        }
        let mut c = self.content();
        if self.terms[0].1.signum() < 0 {
            c = -c;
        }
        (c.clone(), self.scale(&c.recip()))
    }

    /// Groups terms by their part over the variables selected by `pred`.
    /// Returns a map from that part to the polynomial coefficient in the
    /// remaining variables.
    pub fn collect_by(&self, pred: impl Fn(VariableId) -> bool) -> BTreeMap<Monomial, Polynomial> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(&pred);
            groups.entry(inside).or_default().push((outside, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, ts)| (k, Polynomial::from_terms(ts)))
            .collect()
    }

    pub(crate) fn fmt_canonical(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.signum() < 0;
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (v, e) in m.support() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Polynomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only to sort factor lists deterministically.
impl Ord for Polynomial {
    fn cmp(&self, other: &Polynomial) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        for (x, y) in a.zip(b) {
            let o = x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_canonical(f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
