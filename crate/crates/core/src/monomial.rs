//! Exponent-vector monomials with weighted degrees.

/// A monomial in a fixed number of variables, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(&b, &a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Graded reverse lexicographic comparison refined by positive weights.
///
/// Higher weighted degree is greater; on ties the monomial whose exponent
/// vector has the *smaller* entry at the last differing position is greater.
pub fn cmp_grevlex(weights: &[u32], a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da = a.weighted_degree(weights);
    let db = b.weighted_degree(weights);
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.0.len()).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => {}
            // smaller exponent at the last difference wins
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// All monomials of exact weighted degree `d`.
pub fn monomials_of_degree(weights: &[u32], d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let n = weights.len();
    let mut current = vec![0u32; n];
    fn rec(weights: &[u32], idx: usize, rem: i64, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == weights.len() {
            if rem == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let w = weights[idx] as i64;
        let max = rem / w;
        for e in 0..=max {
            current[idx] = e as u32;
            rec(weights, idx + 1, rem - e * w, current, out);
        }
        current[idx] = 0;
    }
    rec(weights, 0, d, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn grevlex_standard_order() {
        let w = [1u32, 1, 1];
        // x^2 > xy > y^2 > xz > yz > z^2 in grevlex on (x,y,z)
        let x2 = Monomial(vec![2, 0, 0]);
        let xy = Monomial(vec![1, 1, 0]);
        let y2 = Monomial(vec![0, 2, 0]);
        let xz = Monomial(vec![1, 0, 1]);
        let seq = [x2, xy, y2, xz];
        for win in seq.windows(2) {
            assert_eq!(cmp_grevlex(&w, &win[0], &win[1]), Ordering::Greater);
        }
    }

    #[test]
    fn weighted_degree_first() {
        // weights (2,3): y > x^2 is false: deg x^2 = 4 > deg y = 3
        let w = [2u32, 3];
        let x2 = Monomial(vec![2, 0]);
        let y = Monomial(vec![0, 1]);
        assert_eq!(cmp_grevlex(&w, &x2, &y), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration_weighted() {
        // weights (2,3): degree 6 monomials are x^3 and y^2
        let ms = monomials_of_degree(&[2, 3], 6);
        assert_eq!(ms.len(), 2);
        // unweighted: degree 3 in two variables -> 4 monomials
        assert_eq!(monomials_of_degree(&[1, 1], 3).len(), 4);
    }
}
