//! Sparse homogeneous polynomials over `F_p` with a fixed weighted grevlex order.

use crate::field;
use crate::monomial::{cmp_grevlex, Monomial};
use crate::ring::PolyRing;
use std::cmp::Ordering;

/// Terms are kept sorted in strictly decreasing grevlex order with nonzero
/// coefficients; the leading term is `terms[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    pub terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(ring: &PolyRing, c: u32) -> Self {
        let c = c % ring.p;
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: vec![(Monomial::one(ring.n), c)],
        }
    }

    pub fn term(ring: &PolyRing, m: Monomial, c: u32) -> Self {
        let c = c % ring.p;
        if c == 0 {
            return Self::zero();
        }
        assert_eq!(m.nvars(), ring.n);
        Polynomial { terms: vec![(m, c)] }
    }

    pub fn var(ring: &PolyRing, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.n, i), 1)
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Weighted degree of the leading term; `None` for zero.
    pub fn degree(&self, ring: &PolyRing) -> Option<i64> {
        self.leading().map(|(m, _)| m.weighted_degree(&ring.weights))
    }

    /// All terms share one weighted degree?
    pub fn is_homogeneous(&self, ring: &PolyRing) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.weighted_degree(&ring.weights);
                self.terms
                    .iter()
                    .all(|(m, _)| m.weighted_degree(&ring.weights) == d)
            }
        }
    }

    pub fn add(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match cmp_grevlex(&ring.weights, &self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field::add(ring.p, self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> Polynomial {
        let c = c % ring.p;
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field::mul(ring.p, *a, c)))
                .collect(),
        }
    }

    pub fn neg(&self, ring: &PolyRing) -> Polynomial {
        self.scale(ring, ring.p - 1)
    }

    pub fn sub(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        self.add(ring, &other.neg(ring))
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: u32) -> Polynomial {
        let c = c % ring.p;
        if c == 0 {
            return Polynomial::zero();
        }
        // multiplying by a fixed monomial preserves the term order
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), field::mul(ring.p, *a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &other.terms {
            acc = acc.add(ring, &self.mul_term(ring, m, *c));
        }
        acc
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, ring: &PolyRing, m: &Monomial) -> u32 {
        for (mm, c) in &self.terms {
            match cmp_grevlex(&ring.weights, mm, m) {
                Ordering::Equal => return *c,
                Ordering::Less => return 0,
                Ordering::Greater => {}
            }
        }
        0
    }

    /// Nonzero constant (degree-0) polynomial?
    pub fn as_unit(&self, ring: &PolyRing) -> Option<u32> {
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            Some(self.terms[0].1 % ring.p)
        } else {
            None
        }
    }

    pub fn display(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut s = String::new();
            if *c != 1 || m.is_one() {
                s.push_str(&c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&ring.names[i]);
                    if e > 1 {
                        s.push_str(&format!("^{}", e));
                    }
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    fn ring2() -> PolyRing {
        PolyRing::new(5, &["x", "y"], &[1, 1])
    }

    #[test]
    fn arithmetic_and_order() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = x.mul(&r, &x).add(&r, &y.mul(&r, &y)); // x^2 + y^2
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.leading().unwrap().0, Monomial(vec![2, 0]));
        let g = f.sub(&r, &f);
        assert!(g.is_zero());
        assert!(f.is_homogeneous(&r));
        let h = f.add(&r, &x);
        assert!(!h.is_homogeneous(&r));
    }

    #[test]
    fn parse_display_roundtrip() {
        let r = ring2();
        let f = r.parse("x^2 + 3*x*y + y^2").unwrap();
        let g = r.parse(&f.display(&r)).unwrap();
        assert_eq!(f, g);
    }
}
