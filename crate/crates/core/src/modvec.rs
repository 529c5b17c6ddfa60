//! Vectors over the ambient polynomial ring, module Groebner bases, syzygies,
//! and kernels over quotient rings.
//!
//! This is the engine behind syzygy computation and every kernel/annihilator
//! construction. The module order is the twisted-degree-first refinement of
//! grevlex with a component tiebreak; syzygies are extracted with an
//! elimination (Schreyer-style) block order on the augmented module.

use crate::field;
use crate::monomial::{cmp_grevlex, monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, QuotientRing};
use std::cmp::Ordering;

/// An element of a free module `S^rank`, one polynomial per component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    pub comps: Vec<Polynomial>,
}

impl ModPoly {
    pub fn zero(rank: usize) -> Self {
        ModPoly {
            comps: vec![Polynomial::zero(); rank],
        }
    }

    pub fn unit(rank: usize, i: usize, ring: &PolyRing) -> Self {
        let mut v = Self::zero(rank);
        v.comps[i] = Polynomial::constant(ring, 1);
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, ring: &PolyRing, other: &ModPoly) -> ModPoly {
        ModPoly {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(ring, b))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &ModPoly) -> ModPoly {
        ModPoly {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(ring, b))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> ModPoly {
        ModPoly {
            comps: self.comps.iter().map(|a| a.scale(ring, c)).collect(),
        }
    }

    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: u32) -> ModPoly {
        ModPoly {
            comps: self.comps.iter().map(|a| a.mul_term(ring, m, c)).collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing, f: &Polynomial) -> ModPoly {
        let mut acc = ModPoly::zero(self.rank());
        for (m, c) in &f.terms {
            acc = acc.add(ring, &self.mul_term(ring, m, *c));
        }
        acc
    }

    /// Twisted degree of a homogeneous vector; `None` for zero, panics on
    /// inhomogeneous input.
    pub fn degree(&self, ring: &PolyRing, twists: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (c, f) in self.comps.iter().enumerate() {
            for (m, _) in &f.terms {
                let d = m.weighted_degree(&ring.weights) + twists[c];
                match deg {
                    None => deg = Some(d),
                    Some(d0) => assert_eq!(d0, d, "inhomogeneous module vector"),
                }
            }
        }
        deg
    }

    pub fn is_homogeneous(&self, ring: &PolyRing, twists: &[i64]) -> bool {
        let mut deg = None;
        for (c, f) in self.comps.iter().enumerate() {
            for (m, _) in &f.terms {
                let d = m.weighted_degree(&ring.weights) + twists[c];
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => return false,
                    _ => {}
                }
            }
        }
        true
    }

    pub fn display(&self, ring: &PolyRing) -> String {
        let parts: Vec<String> = self.comps.iter().map(|f| f.display(ring)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Module term order. Components before `split` dominate the rest
/// (elimination block used for syzygy extraction); within a block the order
/// is twisted degree, then grevlex, then lower component first.
#[derive(Clone, Debug)]
pub struct ModOrder {
    pub twists: Vec<i64>,
    pub split: usize,
}

impl ModOrder {
    pub fn top(twists: Vec<i64>) -> Self {
        let split = twists.len();
        ModOrder { twists, split }
    }

    pub fn elim(twists: Vec<i64>, split: usize) -> Self {
        ModOrder { twists, split }
    }

    fn cmp_terms(
        &self,
        ring: &PolyRing,
        a: (usize, &Monomial),
        b: (usize, &Monomial),
    ) -> Ordering {
        let block = |c: usize| usize::from(c >= self.split);
        match block(b.0).cmp(&block(a.0)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let da = a.1.weighted_degree(&ring.weights) + self.twists[a.0];
        let db = b.1.weighted_degree(&ring.weights) + self.twists[b.0];
        match da.cmp(&db) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match cmp_grevlex(&ring.weights, a.1, b.1) {
            Ordering::Equal => {}
            ord => return ord,
        }
        b.0.cmp(&a.0)
    }

    /// Leading term `(component, monomial, coefficient)`.
    pub fn leading<'a>(&self, ring: &PolyRing, v: &'a ModPoly) -> Option<(usize, &'a Monomial, u32)> {
        let mut best: Option<(usize, &Monomial, u32)> = None;
        for (c, f) in v.comps.iter().enumerate() {
            if let Some((m, coef)) = f.leading() {
                best = match best {
                    None => Some((c, m, *coef)),
                    Some(cur) => {
                        if self.cmp_terms(ring, (c, m), (cur.0, cur.1)) == Ordering::Greater {
                            Some((c, m, *coef))
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        best
    }
}

/// Fully reduce `v` modulo `basis`: every term of the result is irreducible.
pub fn module_reduce(
    ring: &PolyRing,
    order: &ModOrder,
    v: &ModPoly,
    basis: &[ModPoly],
) -> ModPoly {
    let leads: Vec<(usize, Monomial, u32)> = basis
        .iter()
        .map(|g| {
            let (c, m, a) = order.leading(ring, g).expect("zero basis element");
            (c, m.clone(), a)
        })
        .collect();
    let mut rem = ModPoly::zero(v.rank());
    let mut cur = v.clone();
    'outer: while let Some((c, m, a)) = order.leading(ring, &cur).map(|(c, m, a)| (c, m.clone(), a)) {
        for (gi, (gc, gm, gcoef)) in leads.iter().enumerate() {
            if *gc == c && gm.divides(&m) {
                let q = gm.quotient_into(&m);
                let coef = field::div(ring.p, a, *gcoef);
                cur = cur.sub(ring, &basis[gi].mul_term(ring, &q, coef));
                continue 'outer;
            }
        }
        // irreducible leading term: transfer to remainder
        let t = Polynomial { terms: vec![(m.clone(), a)] };
        rem.comps[c] = rem.comps[c].add(ring, &t);
        cur.comps[c] = cur.comps[c].sub(ring, &t);
    }
    rem
}

fn monic(ring: &PolyRing, order: &ModOrder, v: ModPoly) -> ModPoly {
    let (_, _, c) = order.leading(ring, &v).unwrap();
    v.scale(ring, field::inv(ring.p, c))
}

/// Buchberger for submodules of a free module. Returns a reduced GB.
pub fn module_gb(ring: &PolyRing, order: &ModOrder, gens: &[ModPoly]) -> Vec<ModPoly> {
    let mut basis: Vec<ModPoly> = Vec::new();
    for g in gens {
        let r = module_reduce(ring, order, g, &basis);
        if !r.is_zero() {
            basis.push(monic(ring, order, r));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push_pairs = |pairs: &mut Vec<(usize, usize)>, basis: &[ModPoly], k: usize| {
        let lk = order.leading(ring, &basis[k]).unwrap();
        for t in 0..k {
            let lt = order.leading(ring, &basis[t]).unwrap();
            if lt.0 == lk.0 {
                pairs.push((t, k));
            }
        }
    };
    for k in 0..basis.len() {
        push_pairs(&mut pairs, &basis, k);
    }
    while let Some((i, j)) = pairs.pop() {
        let li = order.leading(ring, &basis[i]).unwrap();
        let lj = order.leading(ring, &basis[j]).unwrap();
        debug_assert_eq!(li.0, lj.0);
        let l = li.1.lcm(lj.1);
        let a = basis[i].mul_term(ring, &li.1.quotient_into(&l), field::inv(ring.p, li.2));
        let b = basis[j].mul_term(ring, &lj.1.quotient_into(&l), field::inv(ring.p, lj.2));
        let s = a.sub(ring, &b);
        let r = module_reduce(ring, order, &s, &basis);
        if !r.is_zero() {
            basis.push(monic(ring, order, r));
            let k = basis.len() - 1;
            push_pairs(&mut pairs, &basis, k);
        }
    }
    module_autoreduce(ring, order, basis)
}

fn module_autoreduce(ring: &PolyRing, order: &ModOrder, basis: Vec<ModPoly>) -> Vec<ModPoly> {
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ci, mi, _) = order.leading(ring, &basis[i]).unwrap();
        let mi = mi.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (cj, mj, _) = order.leading(ring, &basis[j]).unwrap();
            if cj == ci && mj.divides(&mi) && (*mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let kept: Vec<ModPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(v, k)| if k { Some(v) } else { None })
        .collect();
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<ModPoly> = kept
            .iter()
            .enumerate()
            .filter_map(|(j, v)| if j != i { Some(v.clone()) } else { None })
            .collect();
        let r = module_reduce(ring, order, &kept[i], &others);
        if !r.is_zero() {
            out.push(monic(ring, order, r));
        }
    }
    out
}

/// Groebner basis and a generating set of syzygies of `gens` inside
/// `S^rank` with the given twists. Syzygies are vectors in `S^{gens.len()}`.
pub fn gb_and_syzygies(
    ring: &PolyRing,
    rank: usize,
    twists: &[i64],
    gens: &[ModPoly],
) -> (Vec<ModPoly>, Vec<ModPoly>) {
    let k = gens.len();
    let mut aug_twists = twists.to_vec();
    for g in gens {
        let d = g.degree(ring, twists).unwrap_or(0);
        aug_twists.push(d);
    }
    let order = ModOrder::elim(aug_twists, rank);
    let aug: Vec<ModPoly> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut comps = g.comps.clone();
            comps.extend(vec![Polynomial::zero(); k]);
            comps[rank + i] = Polynomial::constant(ring, 1);
            ModPoly { comps }
        })
        .collect();
    let gb = module_gb(ring, &order, &aug);
    let mut lead_gb = Vec::new();
    let mut syz = Vec::new();
    for v in gb {
        let first_zero = v.comps[..rank].iter().all(Polynomial::is_zero);
        if first_zero {
            syz.push(ModPoly {
                comps: v.comps[rank..].to_vec(),
            });
        } else {
            lead_gb.push(ModPoly {
                comps: v.comps[..rank].to_vec(),
            });
        }
    }
    (lead_gb, syz)
}

/// Reduced GB over S of the submodule `im(cols) + I * S^rank`; normal forms
/// against it are canonical representatives in the quotient module.
pub fn quotient_module_gb(
    ring: &QuotientRing,
    rank: usize,
    twists: &[i64],
    cols: &[ModPoly],
) -> Vec<ModPoly> {
    let poly = &ring.poly;
    let order = ModOrder::top(twists.to_vec());
    let mut gens: Vec<ModPoly> = cols.iter().filter(|c| !c.is_zero()).cloned().collect();
    for q in &ring.gb {
        for i in 0..rank {
            let mut v = ModPoly::zero(rank);
            v.comps[i] = q.clone();
            gens.push(v);
        }
    }
    module_gb(poly, &order, &gens)
}

/// Generators of the kernel over `R = S/I` of the map `R(twists-src)^k -> R^rank`
/// whose columns are `cols`. Returned vectors live in `S^k` with entries in
/// normal form.
pub fn kernel_gens_over_quotient(
    ring: &QuotientRing,
    rank: usize,
    target_twists: &[i64],
    cols: &[ModPoly],
) -> Vec<ModPoly> {
    let poly = &ring.poly;
    let k = cols.len();
    let mut out: Vec<ModPoly> = Vec::new();
    // zero columns contribute their basis vector outright
    let mut nonzero_idx = Vec::new();
    let mut work_cols = Vec::new();
    for (i, c) in cols.iter().enumerate() {
        let nf = ModPoly {
            comps: c.comps.iter().map(|f| ring.normal_form(f)).collect(),
        };
        if nf.is_zero() {
            out.push(ModPoly::unit(k, i, poly));
        } else {
            nonzero_idx.push(i);
            work_cols.push(nf);
        }
    }
    if work_cols.is_empty() {
        return out;
    }
    // relation columns for the quotient structure
    let nwork = work_cols.len();
    let mut all = work_cols.clone();
    for q in &ring.gb {
        for i in 0..rank {
            let mut v = ModPoly::zero(rank);
            v.comps[i] = q.clone();
            all.push(v);
        }
    }
    let (_, syz) = gb_and_syzygies(poly, rank, target_twists, &all);
    for s in syz {
        let mut v = ModPoly::zero(k);
        let mut nontrivial = false;
        for (wi, &orig) in nonzero_idx.iter().enumerate() {
            let nf = ring.normal_form(&s.comps[wi]);
            if !nf.is_zero() {
                nontrivial = true;
            }
            v.comps[orig] = nf;
        }
        let _ = nwork;
        if nontrivial {
            out.push(v);
        }
    }
    out
}

/// Standard module monomials `(monomial, component)` of twisted degree `d`
/// relative to the leading terms of a module GB.
pub fn standard_module_monomials(
    ring: &QuotientRing,
    gb: &[ModPoly],
    rank: usize,
    twists: &[i64],
    d: i64,
) -> Vec<(Monomial, usize)> {
    let poly = &ring.poly;
    let order = ModOrder::top(twists.to_vec());
    let leads: Vec<(usize, Monomial)> = gb
        .iter()
        .map(|g| {
            let (c, m, _) = order.leading(poly, g).unwrap();
            (c, m.clone())
        })
        .collect();
    let mut out = Vec::new();
    for c in 0..rank {
        for m in monomials_of_degree(&poly.weights, d - twists[c]) {
            let divisible = leads
                .iter()
                .any(|(lc, lm)| *lc == c && lm.divides(&m));
            if !divisible {
                out.push((m, c));
            }
        }
    }
    out
}

/// Is the quotient `S^rank / <gb>` finite dimensional over k?
pub fn quotient_is_finite(ring: &QuotientRing, gb: &[ModPoly], rank: usize, twists: &[i64]) -> bool {
    let poly = &ring.poly;
    let order = ModOrder::top(twists.to_vec());
    // per component the monomial ideal of leading terms must be 0-dimensional
    for c in 0..rank {
        let monos: Vec<Monomial> = gb
            .iter()
            .filter_map(|g| {
                let (lc, m, _) = order.leading(poly, g).unwrap();
                if lc == c {
                    Some(m.clone())
                } else {
                    None
                }
            })
            .collect();
        if monos.iter().any(Monomial::is_one) {
            continue; // component entirely killed
        }
        for var in 0..poly.n {
            // must contain a pure power of each variable
            let has_power = monos.iter().any(|m| {
                m.0.iter()
                    .enumerate()
                    .all(|(i, &e)| if i == var { e > 0 } else { e == 0 })
            });
            if !has_power {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PolyRing, QuotientRing};
    use std::sync::Arc;

    fn nodal() -> Arc<QuotientRing> {
        let poly = Arc::new(PolyRing::new(5, &["x", "y"], &[1, 1]));
        let xy = poly.parse("x*y").unwrap();
        QuotientRing::new(poly, vec![xy])
    }

    fn col(ring: &Arc<QuotientRing>, entries: &[&str]) -> ModPoly {
        ModPoly {
            comps: entries.iter().map(|s| ring.poly.parse(s).unwrap()).collect(),
        }
    }

    #[test]
    fn kernel_of_row_vector_over_nodal() {
        // (x y): R^2 -> R over F5[x,y]/(xy); kernel generated by (y,0), (0,x)
        let r = nodal();
        let cols = vec![col(&r, &["x"]), col(&r, &["y"])];
        let ker = kernel_gens_over_quotient(&r, 1, &[0], &cols);
        let want1 = col(&r, &["y", "0"]);
        let want2 = col(&r, &["0", "x"]);
        // the kernel generators must generate both target vectors and nothing
        // of lower degree
        let twists = vec![1i64, 1];
        let kgb = quotient_module_gb(&r, 2, &twists, &ker);
        assert!(module_reduce(&r.poly, &ModOrder::top(twists.clone()), &want1, &kgb).is_zero());
        assert!(module_reduce(&r.poly, &ModOrder::top(twists.clone()), &want2, &kgb).is_zero());
        // conversely each kernel generator really is in the kernel
        for g in &ker {
            let image = cols[0]
                .mul_poly(&r.poly, &g.comps[0])
                .add(&r.poly, &cols[1].mul_poly(&r.poly, &g.comps[1]));
            assert!(r.normal_form(&image.comps[0]).is_zero());
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = nodal();
        let cols = vec![col(&r, &["1"])];
        let ker = kernel_gens_over_quotient(&r, 1, &[0], &cols);
        assert!(ker.is_empty());
    }

    #[test]
    fn kernel_of_x_over_truncated_line() {
        // (x): R -> R over F3[x]/(x^3); kernel = (x^2)
        let poly = Arc::new(PolyRing::new(3, &["x"], &[1]));
        let x3 = poly.parse("x^3").unwrap();
        let r = QuotientRing::new(poly, vec![x3]);
        let cols = vec![ModPoly {
            comps: vec![r.poly.parse("x").unwrap()],
        }];
        let ker = kernel_gens_over_quotient(&r, 1, &[0], &cols);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].comps[0], r.poly.parse("x^2").unwrap());
    }

    #[test]
    fn standard_monomials_of_quotient_module() {
        // R^1 / (x e_1) over F5[x,y]/(xy): standard monomials 1, y, y^2, ...
        let r = nodal();
        let gb = quotient_module_gb(&r, 1, &[0], &[col(&r, &["x"])]);
        assert_eq!(standard_module_monomials(&r, &gb, 1, &[0], 0).len(), 1);
        assert_eq!(standard_module_monomials(&r, &gb, 1, &[0], 1).len(), 1);
        assert_eq!(standard_module_monomials(&r, &gb, 1, &[0], 5).len(), 1);
        assert!(!quotient_is_finite(&r, &gb, 1, &[0]));
    }
}
