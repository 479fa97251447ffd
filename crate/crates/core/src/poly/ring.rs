use std::fmt;
use std::sync::Arc;

use super::{parse, MonomialOrder, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::engine;

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    relations: Vec<Polynomial>,
    relation_basis: Vec<Polynomial>,
    order: MonomialOrder,
    domain_asserted: bool,
}

/// `ℚ[vars] / (relations)` with a fixed monomial order.
///
/// Arithmetic in a quotient ring happens on representatives in the free ring, reduced
/// modulo a reduced Groebner basis of the relations. Cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct CoordinateRing(Arc<RingData>);

/// The binary operations of [`CoordinateRing::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl CoordinateRing {
    pub fn new(vars: Vec<String>, relations: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        for r in &relations {
            if r.nvars() != vars.len() {
                return Err(Error::VariableCount { expected: vars.len(), found: r.nvars() });
            }
        }
        if !order.fits(vars.len()) {
            return Err(Error::InvalidArgument(format!("order {order} does not fit {} variables", vars.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if !seen.insert(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        let relations: Vec<Polynomial> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let relation_basis = engine::ideal_basis(&relations, &order);
        // a polynomial ring is a domain; quotients need the caller's word
        let domain_asserted = relations.is_empty();
        Ok(CoordinateRing(Arc::new(RingData { vars, relations, relation_basis, order, domain_asserted })))
    }

    /// `ℚ[vars]` under degrevlex.
    pub fn polynomial<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::new(vars.iter().map(|s| s.as_ref().to_string()).collect(), Vec::new(), MonomialOrder::DegRevLex)
            .expect("plain polynomial ring")
    }

    /// Parses a header such as `ring x, y | relations: x^3 - y^2 | order: degrevlex`.
    pub fn parse(header: &str) -> Result<Self> {
        parse::parse_ring_header(header)
    }

    /// Records the caller's assertion that the relation ideal is prime.
    pub fn assert_domain(&self) -> Self {
        let d = &self.0;
        CoordinateRing(Arc::new(RingData {
            vars: d.vars.clone(),
            relations: d.relations.clone(),
            relation_basis: d.relation_basis.clone(),
            order: d.order.clone(),
            domain_asserted: true,
        }))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        let r = Self::new(self.0.vars.clone(), self.0.relations.clone(), order)?;
        Ok(if self.0.domain_asserted { r.assert_domain() } else { r })
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        self.var_index(name).map(|i| Polynomial::var(self.nvars(), i))
    }

    pub fn gen(&self, index: usize) -> Polynomial {
        Polynomial::var(self.nvars(), index)
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.0.relations
    }

    /// Reduced Groebner basis of the relations under [`CoordinateRing::order`].
    pub fn relation_basis(&self) -> &[Polynomial] {
        &self.0.relation_basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn is_quotient(&self) -> bool {
        !self.0.relations.is_empty()
    }

    pub fn domain_asserted(&self) -> bool {
        self.0.domain_asserted
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self.nvars(), c)
    }

    pub fn int(&self, c: i64) -> Polynomial {
        Polynomial::from_int(self.nvars(), c)
    }

    pub fn check(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::VariableCount { expected: self.nvars(), found: f.nvars() });
        }
        Ok(())
    }

    /// Canonical representative modulo the relations.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        engine::ideal_normal_form(f, &self.0.relation_basis, &self.0.order)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn equal(&self, f: &Polynomial, g: &Polynomial) -> bool {
        self.is_zero(&(f - g))
    }

    /// Exact ring arithmetic, reduced modulo the relations.
    pub fn arith(&self, f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check(f)?;
        self.check(g)?;
        let r = match op {
            ArithOp::Add => f + g,
            ArithOp::Sub => f - g,
            ArithOp::Mul => f * g,
        };
        Ok(self.reduce(&r))
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&(f * g))
    }

    pub fn pow(&self, f: &Polynomial, k: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial> {
        Ok(parse::parse_polynomial(text, &self.0.vars)?)
    }

    pub fn fmt_poly(&self, f: &Polynomial) -> String {
        f.to_string_with(&self.0.vars, &self.0.order)
    }

    /// Checks that `point` lies on the variety cut out by the relations.
    pub fn contains_point(&self, point: &[Rational]) -> bool {
        point.len() == self.nvars() && self.0.relations.iter().all(|r| num_traits::Zero::is_zero(&r.eval(point)))
    }

    /// Appends variables; returns the new ring (relations carried over, same order on the
    /// old block, degrevlex overall if the old order was degrevlex).
    pub fn adjoin(&self, names: &[String], order: MonomialOrder) -> Result<Self> {
        let mut vars = self.0.vars.clone();
        vars.extend(names.iter().cloned());
        let extra = names.len();
        let relations = self.0.relations.iter().map(|r| r.extend(extra)).collect();
        let r = Self::new(vars, relations, order)?;
        Ok(if self.0.domain_asserted { r.assert_domain() } else { r })
    }

    /// Picks `count` fresh names `prefix1..prefixN`, lengthening the prefix until no
    /// collision with existing variables remains.
    pub fn fresh_names(&self, prefix: &str, count: usize) -> Vec<String> {
        let mut p = prefix.to_string();
        loop {
            let names: Vec<String> = (1..=count).map(|i| format!("{p}{i}")).collect();
            if names.iter().all(|n| self.var_index(n).is_none()) {
                return names;
            }
            p.push_str(prefix);
        }
    }

    /// Header line in the ASCII grammar.
    pub fn header(&self) -> String {
        let mut s = format!("ring {}", self.0.vars.join(", "));
        if self.is_quotient() {
            let rels: Vec<String> = self.0.relations.iter().map(|r| self.fmt_poly(r)).collect();
            s.push_str(&format!(" | relations: {}", rels.join(", ")));
        }
        if self.0.order != MonomialOrder::DegRevLex {
            s.push_str(&format!(" | order: {}", self.0.order));
        }
        if self.is_quotient() && self.0.domain_asserted {
            s.push_str(" | domain");
        }
        s
    }

    /// Ideal of the singular locus of `Spec` of this ring: relations plus the `c × c`
    /// minors of the Jacobian matrix, where `c` is the codimension of the relation ideal.
    /// The unit ideal's generator `1` for a polynomial ring.
    pub fn jacobian_ideal_generators(&self) -> Vec<Polynomial> {
        if !self.is_quotient() {
            return vec![self.one()];
        }
        let n = self.nvars();
        let dim = crate::groebner::krull_dimension(n, self.relation_basis(), self.order());
        let codim = (n as i64 - dim).max(0) as usize;
        let jac: Vec<Vec<Polynomial>> = self
            .relations()
            .iter()
            .map(|r| (0..n).map(|v| r.derivative(v)).collect())
            .collect();
        let mut gens: Vec<Polynomial> = self.relations().to_vec();
        gens.extend(crate::modules::minors(&jac, codim).into_iter().filter(|m| !m.is_zero()));
        gens
    }
}

impl fmt::Debug for CoordinateRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())
    }
}

impl fmt::Display for CoordinateRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())
    }
}

/// A ring homomorphism given by the image of each source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: CoordinateRing,
    target: CoordinateRing,
    images: Vec<Polynomial>,
}

impl RingMap {
    /// Validates that the source relations map to zero.
    pub fn new(source: CoordinateRing, target: CoordinateRing, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::ImageCount { expected: source.nvars(), found: images.len() });
        }
        for im in &images {
            target.check(im)?;
        }
        let images: Vec<Polynomial> = images.iter().map(|p| target.reduce(p)).collect();
        for r in source.relations() {
            let img = target.reduce(&r.substitute(&images));
            if !img.is_zero() {
                return Err(Error::IllFormedMap { relation: source.fmt_poly(r), image: target.fmt_poly(&img) });
            }
        }
        Ok(RingMap { source, target, images })
    }

    pub fn identity(ring: &CoordinateRing) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.gen(i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &CoordinateRing {
        &self.source
    }

    pub fn target(&self) -> &CoordinateRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Substitutes the images and reduces in the target.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.source.check(f)?;
        Ok(self.target.reduce(&f.substitute(&self.images)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingMap) -> Result<RingMap> {
        if inner.target != self.source {
            return Err(Error::InvalidArgument("ring maps do not compose".into()));
        }
        let images = inner.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        RingMap::new(inner.source.clone(), self.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp() -> CoordinateRing {
        CoordinateRing::parse("ring x, y | relations: x^3 - y^2").unwrap()
    }

    #[test]
    fn arithmetic_in_the_cusp_ring() {
        let r = cusp();
        let y2 = r.parse_poly("y^2").unwrap();
        let p = r.arith(&y2, &y2, ArithOp::Mul).unwrap();
        // y^4 is its own normal form under degrevlex (x^3 leads); its class is x^6
        assert_eq!(p, r.parse_poly("y^4").unwrap());
        assert!(r.equal(&p, &r.parse_poly("x^6").unwrap()));
        assert!(!r.equal(&p, &r.parse_poly("x^3").unwrap()));
    }

    #[test]
    fn reduction_is_idempotent() {
        let r = cusp();
        let f = r.parse_poly("x^7*y + 3*x^4 - y^5").unwrap();
        let once = r.reduce(&f);
        assert_eq!(r.reduce(&once), once);
    }

    #[test]
    fn chart_map_substitutes() {
        let base = CoordinateRing::polynomial(&["x", "y"]);
        let chart = CoordinateRing::polynomial(&["x", "t"]);
        let phi = RingMap::new(base.clone(), chart.clone(), vec![chart.parse_poly("x").unwrap(), chart.parse_poly("x*t").unwrap()]).unwrap();
        let img = phi.apply(&base.parse_poly("y^3").unwrap()).unwrap();
        assert_eq!(img, chart.parse_poly("x^3*t^3").unwrap());
    }

    #[test]
    fn normalization_kills_the_cusp_equation() {
        let line = CoordinateRing::polynomial(&["t"]);
        let phi = RingMap::new(cusp(), line.clone(), vec![line.parse_poly("t^2").unwrap(), line.parse_poly("t^3").unwrap()]).unwrap();
        let f = CoordinateRing::polynomial(&["x", "y"]).parse_poly("x^3 - y^2").unwrap();
        assert!(phi.apply(&f).unwrap().is_zero());
    }

    #[test]
    fn ill_formed_map_is_rejected() {
        let line = CoordinateRing::polynomial(&["t"]);
        let err = RingMap::new(cusp(), line.clone(), vec![line.parse_poly("t").unwrap(), line.parse_poly("t").unwrap()]).unwrap_err();
        assert!(matches!(err, Error::IllFormedMap { .. }));
    }

    #[test]
    fn identity_map_is_identity() {
        let r = cusp();
        let f = r.parse_poly("x^2*y - 1/3").unwrap();
        assert_eq!(RingMap::identity(&r).apply(&f).unwrap(), r.reduce(&f));
    }
}
