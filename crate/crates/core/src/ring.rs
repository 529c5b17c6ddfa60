//! Ambient weighted polynomial rings and graded quotient rings.
//!
//! The quotient `R = F_p[x_1..x_n]/I` by a homogeneous ideal is the graded
//! stand-in for a Noetherian local ring: the graded maximal ideal
//! `(x_1,..,x_n)` plays the role of the maximal ideal.

use crate::field;
use crate::grobner;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use std::sync::{Arc, OnceLock};

/// `F_p[x_1..x_n]` with positive weights; fixes the grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub p: u32,
    pub n: usize,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(p: u32, names: &[&str], weights: &[u32]) -> Self {
        assert!(field::is_prime(p), "{} is not prime", p);
        assert!(p < (1 << 31), "prime must be < 2^31");
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        PolyRing {
            p,
            n: names.len(),
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parse an infix polynomial expression: `+ - * ^`, integers, variable
    /// names, parentheses.
    pub fn parse(&self, text: &str) -> Result<Polynomial, String> {
        let tokens = lex(text)?;
        let mut pos = 0;
        let poly = parse_expr(self, &tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(format!("unexpected token after expression: {:?}", tokens[pos]));
        }
        Ok(poly)
    }

    /// lcm of the variable weights; the search degree for general forms.
    pub fn weight_lcm(&self) -> i64 {
        self.weights.iter().fold(1i64, |acc, &w| {
            let w = w as i64;
            acc / gcd(acc, w) * w
        })
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' | '\u{2212}' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            c if c.is_ascii_digit() => {
                let mut v = 0u64;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        v = v * 10 + d.to_digit(10).unwrap() as u64;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character {:?}", other)),
        }
    }
    Ok(out)
}

fn parse_expr(ring: &PolyRing, toks: &[Tok], pos: &mut usize) -> Result<Polynomial, String> {
    let mut negate = false;
    if toks.get(*pos) == Some(&Tok::Minus) {
        *pos += 1;
        negate = true;
    }
    let mut acc = parse_product(ring, toks, pos)?;
    if negate {
        acc = acc.neg(ring);
    }
    while let Some(t) = toks.get(*pos) {
        match t {
            Tok::Plus => {
                *pos += 1;
                let rhs = parse_product(ring, toks, pos)?;
                acc = acc.add(ring, &rhs);
            }
            Tok::Minus => {
                *pos += 1;
                let rhs = parse_product(ring, toks, pos)?;
                acc = acc.sub(ring, &rhs);
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_product(ring: &PolyRing, toks: &[Tok], pos: &mut usize) -> Result<Polynomial, String> {
    let mut acc = parse_power(ring, toks, pos)?;
    while toks.get(*pos) == Some(&Tok::Star) {
        *pos += 1;
        let rhs = parse_power(ring, toks, pos)?;
        acc = acc.mul(ring, &rhs);
    }
    Ok(acc)
}

fn parse_power(ring: &PolyRing, toks: &[Tok], pos: &mut usize) -> Result<Polynomial, String> {
    let base = parse_atom(ring, toks, pos)?;
    if toks.get(*pos) == Some(&Tok::Caret) {
        *pos += 1;
        match toks.get(*pos) {
            Some(Tok::Int(e)) => {
                *pos += 1;
                let mut acc = Polynomial::constant(ring, 1);
                for _ in 0..*e {
                    acc = acc.mul(ring, &base);
                }
                Ok(acc)
            }
            other => Err(format!("expected integer exponent, found {:?}", other)),
        }
    } else {
        Ok(base)
    }
}

fn parse_atom(ring: &PolyRing, toks: &[Tok], pos: &mut usize) -> Result<Polynomial, String> {
    match toks.get(*pos) {
        Some(Tok::Int(v)) => {
            *pos += 1;
            Ok(Polynomial::constant(ring, (*v % ring.p as u64) as u32))
        }
        Some(Tok::Ident(name)) => {
            *pos += 1;
            match ring.var_index(name) {
                Some(i) => Ok(Polynomial::var(ring, i)),
                None => Err(format!("unknown variable `{}`", name)),
            }
        }
        Some(Tok::LParen) => {
            *pos += 1;
            let inner = parse_expr(ring, toks, pos)?;
            if toks.get(*pos) != Some(&Tok::RParen) {
                return Err("expected `)`".into());
            }
            *pos += 1;
            Ok(inner)
        }
        other => Err(format!("expected polynomial atom, found {:?}", other)),
    }
}

/// A graded quotient ring `F_p[x..]/I` with its reduced Groebner basis and
/// cached Hilbert data. Immutable after construction.
#[derive(Debug)]
pub struct QuotientRing {
    pub poly: Arc<PolyRing>,
    pub ideal_gens: Vec<Polynomial>,
    pub gb: Vec<Polynomial>,
    dim: usize,
    depth: OnceLock<usize>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        *self.poly == *other.poly && self.gb == other.gb
    }
}

impl QuotientRing {
    pub fn new(poly: Arc<PolyRing>, ideal_gens: Vec<Polynomial>) -> Arc<Self> {
        for g in &ideal_gens {
            assert!(
                g.is_homogeneous(&poly),
                "ideal generator {} is not homogeneous",
                g.display(&poly)
            );
        }
        let gb = grobner::groebner_basis(&poly, &ideal_gens);
        let dim = monomial_ideal_dim(&poly, &gb);
        Arc::new(QuotientRing {
            poly,
            ideal_gens,
            gb,
            dim,
            depth: OnceLock::new(),
        })
    }

    /// The ring as a polynomial ring (zero ideal).
    pub fn free(poly: Arc<PolyRing>) -> Arc<Self> {
        Self::new(poly, Vec::new())
    }

    /// Quotient of this ring by further homogeneous elements.
    pub fn quotient_by(self: &Arc<Self>, extra: &[Polynomial]) -> Arc<QuotientRing> {
        let mut gens = self.ideal_gens.clone();
        gens.extend(extra.iter().cloned());
        QuotientRing::new(self.poly.clone(), gens)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        grobner::reduce(&self.poly, f, &self.gb)
    }

    pub fn is_unit(&self, f: &Polynomial) -> bool {
        self.normal_form(f).as_unit(&self.poly).map_or(false, |c| c != 0)
    }

    pub fn krull_dim(&self) -> usize {
        self.dim
    }

    pub fn is_artinian(&self) -> bool {
        self.dim == 0
    }

    /// Standard monomials (k-basis of R) of weighted degree `d`.
    pub fn standard_monomials(&self, d: i64) -> Vec<Monomial> {
        monomials_of_degree(&self.poly.weights, d)
            .into_iter()
            .filter(|m| {
                !self
                    .gb
                    .iter()
                    .any(|g| g.leading().map_or(false, |(lm, _)| lm.divides(m)))
            })
            .collect()
    }

    /// `dim_k R_d`.
    pub fn hilbert_function(&self, d: i64) -> usize {
        self.standard_monomials(d).len()
    }

    /// Total k-dimension; only valid for Artinian rings.
    pub fn length(&self) -> usize {
        assert!(self.is_artinian(), "length requires an Artinian ring");
        let mut total = 0;
        let mut d = 0i64;
        let mut gap = 0;
        let maxw = *self.poly.weights.iter().max().unwrap() as i64;
        loop {
            let h = self.hilbert_function(d);
            total += h;
            gap = if h == 0 { gap + 1 } else { 0 };
            if gap > maxw {
                break;
            }
            d += 1;
        }
        total
    }

    /// Depth of the ring as a module over itself; computed lazily via
    /// `Ext^i(k, R)` by [`crate::homology::depth`].
    pub fn depth(self: &Arc<Self>) -> usize {
        *self.depth.get_or_init(|| {
            let m = crate::fpmodule::FPModule::free(self.clone(), vec![0]);
            crate::homology::depth(&m)
        })
    }

    pub fn display_ideal(&self) -> String {
        let gens: Vec<String> = self.ideal_gens.iter().map(|g| g.display(&self.poly)).collect();
        format!("({})", gens.join(", "))
    }
}

/// Krull dimension of `S/LT(I)`: the largest coordinate subspace avoiding all
/// leading-term supports.
fn monomial_ideal_dim(poly: &PolyRing, gb: &[Polynomial]) -> usize {
    if gb.iter().any(|g| g.as_unit(poly).is_some()) {
        return 0; // unit ideal; the zero ring, dimension 0 by convention
    }
    let n = poly.n;
    let lts: Vec<&Monomial> = gb.iter().filter_map(|g| g.leading().map(|(m, _)| m)).collect();
    let mut best = 0;
    // subsets of variables; n is small throughout
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = lts.iter().all(|m| {
            // some variable of the support must lie outside the subset
            m.0.iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
        });
        if ok {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, names: &[&str], weights: &[u32], gens: &[&str]) -> Arc<QuotientRing> {
        let poly = Arc::new(PolyRing::new(p, names, weights));
        let gens: Vec<Polynomial> = gens.iter().map(|s| poly.parse(s).unwrap()).collect();
        QuotientRing::new(poly, gens)
    }

    #[test]
    fn hilbert_function_nodal_line() {
        // F5[x,y]/(xy): 1,2,2,2,...; dim 1
        let r = ring(5, &["x", "y"], &[1, 1], &["x*y"]);
        assert_eq!(r.hilbert_function(0), 1);
        assert_eq!(r.hilbert_function(1), 2);
        assert_eq!(r.hilbert_function(2), 2);
        assert_eq!(r.hilbert_function(7), 2);
        assert_eq!(r.krull_dim(), 1);
        assert!(!r.is_artinian());
    }

    #[test]
    fn hilbert_function_fat_point() {
        // F2[x,y]/(x^2,xy,y^2): 1,2,0,...; dim 0
        let r = ring(2, &["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"]);
        assert_eq!(r.hilbert_function(0), 1);
        assert_eq!(r.hilbert_function(1), 2);
        assert_eq!(r.hilbert_function(2), 0);
        assert_eq!(r.krull_dim(), 0);
        assert!(r.is_artinian());
        assert_eq!(r.length(), 3);
    }

    #[test]
    fn hilbert_function_polynomial_ring() {
        // F5[x,y]: h(3) = 4, dim 2
        let r = ring(5, &["x", "y"], &[1, 1], &[]);
        assert_eq!(r.hilbert_function(3), 4);
        assert_eq!(r.krull_dim(), 2);
    }

    #[test]
    fn cusp_ring_weighted() {
        // F5[x:2, y:3]/(y^2 - x^3): degrees 0..=6 have dims 1,0,1,1,1,1,1
        let r = ring(5, &["x", "y"], &[2, 3], &["y^2 - x^3"]);
        let dims: Vec<usize> = (0..=6).map(|d| r.hilbert_function(d)).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(r.krull_dim(), 1);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y"], &[1, 1], &["x*y"]);
        let f = r.poly.parse("x*y").unwrap();
        assert!(r.normal_form(&f).is_zero());
        let g = r.poly.parse("x^2*y").unwrap();
        assert!(r.normal_form(&g).is_zero());

        // y^2 and x^3 agree in F5[x,y]/(y^2-x^3); grevlex picks x^3 as the
        // leading term, so y^2 is the canonical representative of the class
        let cusp = ring(5, &["x", "y"], &[2, 3], &["y^2 - x^3"]);
        let y2 = cusp.poly.parse("y^2").unwrap();
        let x3 = cusp.poly.parse("x^3").unwrap();
        assert_eq!(cusp.normal_form(&y2), cusp.normal_form(&x3));
        assert!(cusp.normal_form(&y2.sub(&cusp.poly, &x3)).is_zero());
    }
}
