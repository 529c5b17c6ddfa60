//! Buchberger's algorithm for homogeneous ideals, with full reduction and
//! autoreduction so that normal forms are canonical.

use crate::field;
use crate::monomial::cmp_grevlex;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// Fully reduce `f` modulo the (leading terms of the) given basis.
pub fn reduce(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut rem = Polynomial::zero();
    let mut cur = f.clone();
    'outer: while let Some((lm, lc)) = cur.leading().cloned() {
        for g in basis {
            if let Some((gm, gc)) = g.leading() {
                if gm.divides(&lm) {
                    let q = gm.quotient_into(&lm);
                    let c = field::div(ring.p, lc, *gc);
                    cur = cur.sub(ring, &g.mul_term(ring, &q, c));
                    continue 'outer;
                }
            }
        }
        // leading term irreducible: move it to the remainder
        rem = rem.add(ring, &Polynomial { terms: vec![(lm.clone(), lc)] });
        cur.terms.remove(0);
    }
    rem
}

fn s_poly(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(ring, &fm.quotient_into(&l), field::inv(ring.p, *fc));
    let b = g.mul_term(ring, &gm.quotient_into(&l), field::inv(ring.p, *gc));
    a.sub(ring, &b)
}

/// Reduced Groebner basis of the ideal generated by `gens` under the ring's
/// weighted grevlex order. Leading coefficients are normalized to 1.
pub fn groebner_basis(ring: &PolyRing, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let r = reduce(ring, g, &basis);
        if !r.is_zero() {
            basis.push(monic(ring, r));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, _) = fi.leading().unwrap();
        let (mj, _) = fj.leading().unwrap();
        if mi.coprime(mj) {
            continue; // Buchberger's first criterion
        }
        let s = s_poly(ring, fi, fj);
        let r = reduce(ring, &s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(monic(ring, r));
            for t in 0..k {
                pairs.push((t, k));
            }
        }
    }
    autoreduce(ring, basis)
}

fn monic(ring: &PolyRing, f: Polynomial) -> Polynomial {
    let lc = f.leading().unwrap().1;
    f.scale(ring, field::inv(ring.p, lc))
}

fn autoreduce(ring: &PolyRing, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading term is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = basis[i].leading().unwrap().clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = basis[j].leading().unwrap();
            if mj.divides(&mi) && (mj != &mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let kept: Vec<Polynomial> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(f, k)| if k { Some(f) } else { None })
        .collect();
    // fully reduce each element against the others
    let mut out: Vec<Polynomial> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter_map(|(j, f)| if j != i { Some(f.clone()) } else { None })
            .collect();
        let r = reduce(ring, &kept[i], &others);
        if !r.is_zero() {
            out.push(monic(ring, r));
        }
    }
    out.sort_by(|a, b| {
        cmp_grevlex(&ring.weights, &b.leading().unwrap().0, &a.leading().unwrap().0)
    });
    out
}

/// Is `f` in the ideal spanned by the (Groebner) basis?
pub fn in_ideal(ring: &PolyRing, f: &Polynomial, gb: &[Polynomial]) -> bool {
    reduce(ring, f, gb).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    #[test]
    fn single_monomial_is_its_own_gb() {
        let r = PolyRing::new(5, &["x", "y"], &[1, 1]);
        let gb = groebner_basis(&r, &[r.parse("x*y").unwrap()]);
        assert_eq!(gb, vec![r.parse("x*y").unwrap()]);
    }

    #[test]
    fn weighted_binomial_is_its_own_gb() {
        let r = PolyRing::new(5, &["x", "y"], &[2, 3]);
        let gb = groebner_basis(&r, &[r.parse("y^2 - x^3").unwrap()]);
        assert_eq!(gb.len(), 1);
        // monic in the leading term x^3
        let g = &gb[0];
        assert_eq!(g.leading().unwrap().0 .0, vec![3, 0]);
    }

    #[test]
    fn sum_and_difference_split() {
        // {x^2 - y^2, x^2 + y^2} over F5 reduces to {x^2, y^2}
        let r = PolyRing::new(5, &["x", "y"], &[1, 1]);
        let gens = [r.parse("x^2 - y^2").unwrap(), r.parse("x^2 + y^2").unwrap()];
        let gb = groebner_basis(&r, &gens);
        let expect = vec![r.parse("x^2").unwrap(), r.parse("y^2").unwrap()];
        let mut got = gb.clone();
        got.sort_by_key(|f| f.leading().unwrap().0.clone());
        let mut want = expect;
        want.sort_by_key(|f| f.leading().unwrap().0.clone());
        assert_eq!(got, want);
    }

    #[test]
    fn reduction_is_canonical() {
        let r = PolyRing::new(5, &["x", "y"], &[1, 1]);
        let gb = groebner_basis(&r, &[r.parse("x^2 - y^2").unwrap(), r.parse("x*y").unwrap()]);
        // normal form of x^3: x^3 = x*(x^2 - y^2) + y^2*x -> x*y*y -> 0
        let f = r.parse("x^3").unwrap();
        assert!(reduce(&r, &f, &gb).is_zero());
    }
}
