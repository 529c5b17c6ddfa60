//! Homological invariants of finitely presented graded modules: Hom, Ext,
//! tensor, duals, transpose, fitting ideals, annihilator, socle, trace,
//! depth and type, Matlis duals and canonical modules.

use crate::field;
use crate::fpmodule::{resolution, FPMap, FPModule, FreeModule, ModuleMap};
use crate::grobner::{groebner_basis, reduce};
use crate::linalg::FpMatrix;
use crate::modvec::{kernel_gens_over_quotient, ModPoly};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, QuotientRing};
use rand::Rng;
use rand::SeedableRng;
use std::sync::{Arc, OnceLock};

/// A homogeneous ideal of the quotient ring, with a cached Groebner basis of
/// its preimage in the polynomial ring.
#[derive(Debug)]
pub struct Ideal {
    pub ring: Arc<QuotientRing>,
    pub gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal::new(self.ring.clone(), self.gens.clone())
    }
}

impl Ideal {
    pub fn new(ring: Arc<QuotientRing>, gens: Vec<Polynomial>) -> Self {
        let gens = gens
            .iter()
            .map(|g| ring.normal_form(g))
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            ring,
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: Arc<QuotientRing>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: Arc<QuotientRing>) -> Self {
        let one = Polynomial::constant(&ring.poly, 1);
        Ideal::new(ring, vec![one])
    }

    /// GB of the full preimage (generators plus the ring ideal).
    pub fn gb(&self) -> &Vec<Polynomial> {
        self.gb.get_or_init(|| {
            let mut all = self.gens.clone();
            all.extend(self.ring.gb.iter().cloned());
            groebner_basis(&self.ring.poly, &all)
        })
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        reduce(&self.ring.poly, f, self.gb()).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&Polynomial::constant(&self.ring.poly, 1))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
            && other.gens.iter().all(|g| self.contains(g))
    }

    /// Does every generator annihilate the module?
    pub fn kills_module(&self, m: &FPModule) -> bool {
        self.gens.iter().all(|g| {
            (0..m.ambient_rank()).all(|i| {
                let mut v = ModPoly::zero(m.ambient_rank());
                v.comps[i] = g.clone();
                m.nf(&v).is_zero()
            })
        })
    }

    pub fn display(&self) -> String {
        if self.gens.is_empty() {
            return "(0)".into();
        }
        let inner: Vec<String> = self.gens.iter().map(|g| g.display(&self.ring.poly)).collect();
        format!("({})", inner.join(", "))
    }
}

/// `⊕_j N(shifted by -t_j)`, the Hom target for a free module with the given
/// twists.
fn hom_free_into(twists: &[i64], n: &FPModule) -> FPModule {
    if twists.is_empty() {
        return FPModule::free(n.ring().clone(), Vec::new());
    }
    let parts: Vec<FPModule> = twists.iter().map(|&t| n.shift(-t)).collect();
    let refs: Vec<&FPModule> = parts.iter().collect();
    FPModule::direct_sum(&refs)
}

/// The map `Hom(d.target, N) -> Hom(d.source, N)`, phi -> phi ∘ d, between
/// the direct-sum presentations.
fn induced_hom_map(d: &ModuleMap, n: &FPModule) -> FPMap {
    let rn = n.ambient_rank();
    let source = hom_free_into(&d.target.twists, n);
    let target = hom_free_into(&d.source.twists, n);
    let poly = &n.ring().poly;
    let mut cols = Vec::with_capacity(source.ambient_rank());
    for j in 0..d.target.rank() {
        for b in 0..rn {
            let mut col = ModPoly::zero(target.ambient_rank());
            for i in 0..d.source.rank() {
                let e = d.entry(j, i);
                if !e.is_zero() {
                    col.comps[i * rn + b] = e.clone();
                }
            }
            let _ = poly;
            cols.push(col);
        }
    }
    FPMap::new(source, target, cols, 0).expect("induced map is well defined")
}

/// Presentation of `(span Z + span W + relations)/(span W + relations)`
/// inside the ambient module, with generators Z.
fn subquotient(ambient: &FPModule, gens: &[ModPoly], subs: &[ModPoly]) -> FPModule {
    let ring = ambient.ring().clone();
    let gens: Vec<ModPoly> = gens
        .iter()
        .map(|g| ambient.nf(g))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return FPModule::free(ring, Vec::new());
    }
    let k = gens.len();
    let twists: Vec<i64> = gens
        .iter()
        .map(|g| g.degree(&ring.poly, ambient.twists()).unwrap())
        .collect();
    let mut all = gens.clone();
    all.extend(subs.iter().cloned());
    all.extend(ambient.pres.cols.iter().cloned());
    let syz = kernel_gens_over_quotient(&ring, ambient.ambient_rank(), ambient.twists(), &all);
    let rel_cols: Vec<ModPoly> = syz
        .iter()
        .map(|s| ModPoly {
            comps: s.comps[..k].to_vec(),
        })
        .filter(|v| !v.is_zero())
        .collect();
    let rel_twists: Vec<i64> = rel_cols
        .iter()
        .map(|c| c.degree(&ring.poly, &twists).unwrap())
        .collect();
    FPModule::new(ModuleMap::new(
        FreeModule::new(ring.clone(), rel_twists),
        FreeModule::new(ring, twists),
        rel_cols,
    ))
}

/// Hom module together with its concrete realization: the ambient direct-sum
/// module `⊕_j N(-t_j)`, the generators as ambient vectors, and per generator
/// the images `phi_k(g_j)` in N's ambient module (`g_j` = minimal generators
/// of M).
pub struct HomData {
    pub module: FPModule,
    pub ambient: FPModule,
    pub gens_ambient: Vec<ModPoly>,
    pub images: Vec<Vec<ModPoly>>,
}

pub fn hom_data(m: &FPModule, n: &FPModule) -> HomData {
    let mm = m.minimized();
    let rn = n.ambient_rank();
    let f = induced_hom_map(&mm.pres, n);
    let ambient = f.source.clone();
    let (hom, gens) = f.kernel();
    let r0 = mm.ambient_rank();
    let images: Vec<Vec<ModPoly>> = gens
        .iter()
        .map(|g| {
            (0..r0)
                .map(|j| ModPoly {
                    comps: g.comps[j * rn..(j + 1) * rn].to_vec(),
                })
                .collect()
        })
        .collect();
    HomData {
        module: hom,
        ambient,
        gens_ambient: gens,
        images,
    }
}

/// `Hom_R(M, N)` together with the generator images.
pub fn hom_with_gens(m: &FPModule, n: &FPModule) -> (FPModule, Vec<Vec<ModPoly>>) {
    let d = hom_data(m, n);
    (d.module, d.images)
}

pub fn hom_module(m: &FPModule, n: &FPModule) -> FPModule {
    hom_with_gens(m, n).0
}

/// `Ext^i_R(M, N)` as a subquotient presentation; `Ext^0 = Hom`.
pub fn ext_module(m: &FPModule, n: &FPModule, i: usize) -> FPModule {
    if i == 0 {
        return hom_module(m, n);
    }
    let res = resolution(m, i + 1);
    if res.betti(i) == 0 {
        return FPModule::free(m.ring().clone(), Vec::new());
    }
    let d_i = &res.maps[i - 1]; // F_i -> F_{i-1}
    let d_ip1 = &res.maps[i]; // F_{i+1} -> F_i
    let up = induced_hom_map(d_ip1, n); // Hom(F_i,N) -> Hom(F_{i+1},N)
    let (_, z) = up.kernel();
    let down = induced_hom_map(d_i, n); // Hom(F_{i-1},N) -> Hom(F_i,N)
    let w: Vec<ModPoly> = down.cols.clone();
    subquotient(&up.source, &z, &w)
}

/// `M ⊗_R N` presented by the standard block matrix.
pub fn tensor_module(m: &FPModule, n: &FPModule) -> FPModule {
    let ring = m.ring().clone();
    let mm = m.minimized();
    let nn = n.minimized();
    let rm = mm.ambient_rank();
    let rn = nn.ambient_rank();
    let mut twists = Vec::with_capacity(rm * rn);
    for i in 0..rm {
        for j in 0..rn {
            twists.push(mm.twists()[i] + nn.twists()[j]);
        }
    }
    let mut cols = Vec::new();
    let mut src_twists = Vec::new();
    for (c, a) in mm.pres.cols.iter().enumerate() {
        let s = mm.pres.source.twists[c];
        for j in 0..rn {
            let mut col = ModPoly::zero(rm * rn);
            for i in 0..rm {
                col.comps[i * rn + j] = a.comps[i].clone();
            }
            if !col.is_zero() {
                cols.push(col);
                src_twists.push(s + nn.twists()[j]);
            }
        }
    }
    for (c, b) in nn.pres.cols.iter().enumerate() {
        let s = nn.pres.source.twists[c];
        for i in 0..rm {
            let mut col = ModPoly::zero(rm * rn);
            for j in 0..rn {
                col.comps[i * rn + j] = b.comps[j].clone();
            }
            if !col.is_zero() {
                cols.push(col);
                src_twists.push(s + mm.twists()[i]);
            }
        }
    }
    FPModule::new(ModuleMap::new(
        FreeModule::new(ring.clone(), src_twists),
        FreeModule::new(ring, twists),
        cols,
    ))
}

/// `M^* = Hom(M, R)`.
pub fn dual(m: &FPModule) -> FPModule {
    let r = FPModule::free(m.ring().clone(), vec![0]);
    hom_module(m, &r)
}

/// Auslander transpose: cokernel of the transposed minimal presentation.
pub fn transpose(m: &FPModule) -> FPModule {
    FPModule::new(m.minimal_presentation().transpose())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn poly_det(poly: &PolyRing, rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    if n == 0 {
        return Polynomial::constant(poly, 1);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter_map(|(c, f)| if c != j { Some(f.clone()) } else { None })
                    .collect()
            })
            .collect();
        let sub = poly_det(poly, &minor);
        let term = rows[0][j].mul(poly, &sub);
        if j % 2 == 0 {
            acc = acc.add(poly, &term);
        } else {
            acc = acc.sub(poly, &term);
        }
    }
    acc
}

/// Fitting ideal `I_j(M)`: the ideal of `(mu - j)`-minors of the minimal
/// presentation matrix.
pub fn fitting_ideal(m: &FPModule, j: usize) -> Ideal {
    let ring = m.ring().clone();
    let pres = m.minimal_presentation();
    let nrows = pres.target.rank();
    let ncols = pres.source.rank();
    if nrows <= j {
        return Ideal::unit(ring);
    }
    let size = nrows - j;
    if size > ncols {
        return Ideal::zero(ring);
    }
    let poly = &ring.poly;
    let mut gens = Vec::new();
    for rsel in combinations(nrows, size) {
        for csel in combinations(ncols, size) {
            let sub: Vec<Vec<Polynomial>> = rsel
                .iter()
                .map(|&i| csel.iter().map(|&c| pres.entry(i, c).clone()).collect())
                .collect();
            let d = poly_det(poly, &sub);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ideal::new(ring, gens)
}

/// `Ann M = {r : rM = 0}`, computed as the kernel of `R -> ⊕_i M(-t_i)`,
/// `1 -> (g_1, .., g_r)`.
pub fn annihilator(m: &FPModule) -> Ideal {
    let ring = m.ring().clone();
    let mm = m.minimized();
    let r0 = mm.ambient_rank();
    if r0 == 0 {
        return Ideal::unit(ring);
    }
    let parts: Vec<FPModule> = mm.twists().iter().map(|&t| mm.shift(-t)).collect();
    let refs: Vec<&FPModule> = parts.iter().collect();
    let sum = FPModule::direct_sum(&refs);
    let one = FPModule::free(ring.clone(), vec![0]);
    let mut col = ModPoly::zero(sum.ambient_rank());
    for i in 0..r0 {
        col.comps[i * r0 + i] = Polynomial::constant(&ring.poly, 1);
    }
    let f = FPMap::new(one, sum, vec![col], 0).expect("diagonal map is well defined");
    let (_, gens) = f.kernel();
    Ideal::new(ring, gens.into_iter().map(|g| g.comps[0].clone()).collect())
}

/// Socle `{m : x_v m = 0 for all v}` as a submodule of M, with inclusion
/// generators.
pub fn socle(m: &FPModule) -> (FPModule, Vec<ModPoly>) {
    let ring = m.ring().clone();
    let poly = &ring.poly;
    let r0 = m.ambient_rank();
    if r0 == 0 {
        return (FPModule::free(ring, Vec::new()), Vec::new());
    }
    let parts: Vec<FPModule> = (0..poly.n)
        .map(|v| m.shift(-(poly.weights[v] as i64)))
        .collect();
    let refs: Vec<&FPModule> = parts.iter().collect();
    let sum = FPModule::direct_sum(&refs);
    let mut cols = Vec::with_capacity(r0);
    for j in 0..r0 {
        let mut col = ModPoly::zero(sum.ambient_rank());
        for v in 0..poly.n {
            col.comps[v * r0 + j] = Polynomial::var(poly, v);
        }
        cols.push(col);
    }
    let f = FPMap::new(m.clone(), sum, cols, 0).expect("variable multiplication is well defined");
    f.kernel()
}

pub fn socle_dim(m: &FPModule) -> usize {
    socle(m).0.length()
}

/// Trace ideal: generated by `phi(g_j)` over generators phi of `Hom(M,R)`
/// and minimal generators `g_j` of M.
pub fn trace_ideal(m: &FPModule) -> Ideal {
    let ring = m.ring().clone();
    let r = FPModule::free(ring.clone(), vec![0]);
    let (_, images) = hom_with_gens(m, &r);
    let mut gens = Vec::new();
    for phi in &images {
        for img in phi {
            if !img.comps[0].is_zero() {
                gens.push(img.comps[0].clone());
            }
        }
    }
    Ideal::new(ring, gens)
}

/// A splitting witness: a map `M -> R` (by generator images) and the index of
/// a minimal generator it sends to a unit.
#[derive(Clone, Debug)]
pub struct FreeSummandWitness {
    pub hom_images: Vec<ModPoly>,
    pub generator: usize,
    pub unit: u32,
}

/// Does M have a free direct summand? The trace ideal of a graded module is
/// generated by homogeneous elements, so it is the unit ideal exactly when
/// some generator image is a nonzero constant.
pub fn has_free_summand(m: &FPModule) -> Option<FreeSummandWitness> {
    let ring = m.ring().clone();
    let poly = &ring.poly;
    let r = FPModule::free(ring.clone(), vec![0]);
    let (_, images) = hom_with_gens(m, &r);
    for phi in &images {
        for (j, img) in phi.iter().enumerate() {
            if let Some(u) = img.comps[0].as_unit(poly) {
                if u != 0 {
                    return Some(FreeSummandWitness {
                        hom_images: phi.clone(),
                        generator: j,
                        unit: u,
                    });
                }
            }
        }
    }
    None
}

/// Basis of the homogeneous degree-`e` maps `M -> N`, each given by the
/// images of M's minimal generators. Independent of the Hom-module
/// presentation (pure degreewise linear algebra).
pub fn hom_space(m: &FPModule, n: &FPModule, e: i64) -> Vec<Vec<ModPoly>> {
    let mm = m.minimized();
    let ring = mm.ring().clone();
    let poly = &ring.poly;
    let r0 = mm.ambient_rank();
    let rn = n.ambient_rank();
    // unknowns: coefficients of phi(g_j) in N's standard basis of degree t_j+e
    let mut unknowns: Vec<(usize, crate::monomial::Monomial, usize)> = Vec::new();
    for j in 0..r0 {
        for (mono, comp) in n.basis_in_degree(mm.twists()[j] + e) {
            unknowns.push((j, mono, comp));
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (c, rel) in mm.pres.cols.iter().enumerate() {
        let s = mm.pres.source.twists[c];
        let deg = s + e;
        let basis = n.basis_in_degree(deg);
        if basis.is_empty() {
            continue;
        }
        let mut constraint = vec![vec![0u32; unknowns.len()]; basis.len()];
        for (u, (j, mono, comp)) in unknowns.iter().enumerate() {
            let a = &rel.comps[*j];
            if a.is_zero() {
                continue;
            }
            let mut v = ModPoly::zero(rn);
            v.comps[*comp] = a.mul(poly, &Polynomial::term(poly, mono.clone(), 1));
            let coords = n.coords_in_degree(&v, deg);
            for (i, &x) in coords.iter().enumerate() {
                constraint[i][u] = field::add(poly.p, constraint[i][u], x);
            }
        }
        rows.extend(constraint);
    }
    let sys = if rows.is_empty() {
        FpMatrix::zero(poly.p, 0, unknowns.len())
    } else {
        FpMatrix::from_rows(poly.p, rows)
    };
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut images = vec![ModPoly::zero(rn); r0];
            for (u, (j, mono, comp)) in unknowns.iter().enumerate() {
                if v[u] != 0 {
                    images[*j].comps[*comp] = images[*j]
                        .comps[*comp]
                        .add(poly, &Polynomial::term(poly, mono.clone(), v[u]));
                }
            }
            images
        })
        .collect()
}

/// Express `target` as an R-combination of the given ambient vectors modulo
/// the relations of M, degreewise. Returns the homogeneous coefficients.
pub fn solve_module_equation(
    m: &FPModule,
    gens: &[ModPoly],
    target: &ModPoly,
) -> Option<Vec<Polynomial>> {
    let ring = m.ring().clone();
    let poly = &ring.poly;
    let tnf = m.nf(target);
    if tnf.is_zero() {
        return Some(vec![Polynomial::zero(); gens.len()]);
    }
    let d = tnf.degree(poly, m.twists()).unwrap();
    let mut labels: Vec<(usize, crate::monomial::Monomial)> = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let gnf = m.nf(g);
        let Some(gd) = gnf.degree(poly, m.twists()) else {
            continue;
        };
        if d - gd < 0 {
            continue;
        }
        for mono in ring.standard_monomials(d - gd) {
            let prod = gnf.mul_poly(poly, &Polynomial::term(poly, mono.clone(), 1));
            cols.push(m.coords_in_degree(&prod, d).iter().map(|&x| x).collect());
            labels.push((i, mono));
        }
    }
    if cols.is_empty() {
        return None;
    }
    let mat = crate::linalg::column_matrix(poly.p, &cols);
    let rhs = m.coords_in_degree(&tnf, d);
    let sol = mat.solve(&rhs)?;
    let mut out = vec![Polynomial::zero(); gens.len()];
    for (k, &c) in sol.iter().enumerate() {
        if c != 0 {
            let (i, mono) = &labels[k];
            out[*i] = out[*i].add(poly, &Polynomial::term(poly, mono.clone(), c));
        }
    }
    Some(out)
}

/// Three-valued isomorphism verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iso {
    True,
    False,
    Inconclusive,
}

/// Upper bound on candidate coefficient tuples tried exhaustively.
const ISO_EXHAUSTIVE_LIMIT: u64 = 100_000;

/// Graded isomorphism test. `True` and `False` verdicts are certain:
/// candidates come from the full degree-0 Hom space and invariant mismatches
/// are definitive. `Inconclusive` can only arise when the sampled (not
/// exhaustive) search finds no invertible combination.
pub fn is_isomorphic(m: &FPModule, n: &FPModule, seed: u64, budget: usize) -> (Iso, Option<FPMap>) {
    let mm = m.minimized();
    let nn = n.minimized();
    if mm.mu() != nn.mu() {
        return (Iso::False, None);
    }
    if mm.mu() == 0 {
        return (Iso::True, None);
    }
    let mut tm: Vec<i64> = mm.twists().to_vec();
    let mut tn: Vec<i64> = nn.twists().to_vec();
    tm.sort();
    tn.sort();
    if tm != tn {
        return (Iso::False, None);
    }
    // Hilbert comparison: exact for finite length, else a prefix window
    let lo = mm.min_degree();
    let hi = if mm.is_finite_length() && nn.is_finite_length() {
        mm.degree_bound().max(nn.degree_bound())
    } else {
        let w = mm.ring().poly.weight_lcm();
        *tm.last().unwrap() + 4 * w
    };
    for d in lo..=hi {
        if mm.hilbert_function(d) != nn.hilbert_function(d) {
            return (Iso::False, None);
        }
    }
    let basis = hom_space(&mm, &nn, 0);
    if basis.is_empty() {
        return (Iso::False, None);
    }
    let p = mm.ring().poly.p;
    let mu = mm.mu();
    // reduce each basis map mod m: matrix of constant terms
    let bars: Vec<FpMatrix> = basis
        .iter()
        .map(|phi| {
            let mut mat = FpMatrix::zero(p, mu, mu);
            for (j, img) in phi.iter().enumerate() {
                for (b, f) in img.comps.iter().enumerate() {
                    if let Some(u) = f.as_unit(&mm.ring().poly) {
                        mat.set(b, j, u);
                    }
                }
            }
            mat
        })
        .collect();
    let dimh = basis.len();
    let total = (p as u64).checked_pow(dimh as u32);
    let invertible = |c: &[u32]| -> bool {
        let mut mat = FpMatrix::zero(p, mu, mu);
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                mat = mat.add(&bars[k].scale(ck));
            }
        }
        mat.inverse().is_some()
    };
    let build = |c: &[u32]| -> Option<FPMap> {
        let poly = &mm.ring().poly;
        let mut cols = vec![ModPoly::zero(nn.ambient_rank()); mm.ambient_rank()];
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            for (j, img) in basis[k].iter().enumerate() {
                cols[j] = cols[j].add(poly, &img.scale(poly, ck));
            }
        }
        FPMap::new(mm.clone(), nn.clone(), cols, 0).ok()
    };
    let verify = |c: &[u32]| -> Option<FPMap> {
        let f = build(c)?;
        if f.is_isomorphism() {
            Some(f)
        } else {
            None
        }
    };
    match total {
        Some(t) if t <= ISO_EXHAUSTIVE_LIMIT => {
            let mut c = vec![0u32; dimh];
            loop {
                // increment base-p counter
                let mut k = 0;
                loop {
                    if k == dimh {
                        return (Iso::False, None);
                    }
                    if c[k] + 1 < p {
                        c[k] += 1;
                        for x in c.iter_mut().take(k) {
                            *x = 0;
                        }
                        break;
                    }
                    k += 1;
                }
                if invertible(&c) {
                    if let Some(f) = verify(&c) {
                        return (Iso::True, Some(f));
                    }
                }
            }
        }
        _ => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..budget {
                let c: Vec<u32> = (0..dimh).map(|_| rng.gen_range(0..p)).collect();
                if c.iter().all(|&x| x == 0) {
                    continue;
                }
                if invertible(&c) {
                    if let Some(f) = verify(&c) {
                        return (Iso::True, Some(f));
                    }
                }
            }
            (Iso::Inconclusive, None)
        }
    }
}

/// Twist-insensitive version: shifts N so the minimal generator degrees can
/// match before testing.
pub fn is_isomorphic_up_to_shift(
    m: &FPModule,
    n: &FPModule,
    seed: u64,
    budget: usize,
) -> (Iso, i64) {
    let mm = m.minimized();
    let nn = n.minimized();
    if mm.mu() != nn.mu() {
        return (Iso::False, 0);
    }
    if mm.mu() == 0 {
        return (Iso::True, 0);
    }
    let s = mm.min_degree() - nn.min_degree();
    let (iso, _) = is_isomorphic(&mm, &nn.shift(s), seed, budget);
    (iso, s)
}

/// `nu_i(M) = dim_k Ext^i(k, M)`.
pub fn nu(i: usize, m: &FPModule) -> usize {
    let k = FPModule::residue_field(m.ring());
    ext_module(&k, m, i).length()
}

/// Depth as the least `i` with `Ext^i(k, M) != 0`; bounded by the ring
/// dimension.
pub fn depth(m: &FPModule) -> usize {
    assert!(!m.is_zero_module(), "depth of the zero module is undefined");
    let bound = m.ring().krull_dim();
    for i in 0..=bound {
        if nu(i, m) > 0 {
            return i;
        }
    }
    unreachable!("Ext^i(k, M) must be nonzero for some i <= dim R");
}

/// Cohen-Macaulay type: `nu_depth(M)`.
pub fn module_type(m: &FPModule) -> usize {
    nu(depth(m), m)
}

/// Length of `M/(seq)M` for a full system of parameters regular on M.
pub fn multiplicity(m: &FPModule, seq: &[Polynomial]) -> Result<usize, String> {
    assert_eq!(
        seq.len(),
        m.ring().krull_dim(),
        "parameter sequence must have length dim R"
    );
    let mut cur = m.clone();
    for f in seq {
        cur = cur.cut_down(f)?;
    }
    Ok(cur.length())
}

/// Graded k-dual with contragredient action, re-presented as a module.
pub fn matlis_dual(m: &FPModule) -> FPModule {
    assert!(m.is_finite_length(), "matlis dual needs finite length");
    let l = crate::oracle::realize(m);
    crate::oracle::linmodule_to_fpmodule(&l.dual(), m.ring())
}

/// Canonical module `omega = Ext^{n-d}_S(R, S)` over the ambient polynomial
/// ring, base-changed to R and twist-normalized so the smallest generator
/// sits in degree 0. Requires R Cohen-Macaulay.
pub fn canonical_module(ring: &Arc<QuotientRing>) -> Result<FPModule, String> {
    let d = ring.krull_dim();
    let rself = FPModule::free(ring.clone(), vec![0]);
    let dep = depth(&rself);
    if dep != d {
        return Err(format!(
            "ring is not Cohen-Macaulay: depth {} < dim {}",
            dep, d
        ));
    }
    let n = ring.poly.n;
    let s_ring = QuotientRing::free(ring.poly.clone());
    let r_over_s = FPModule::cyclic(s_ring.clone(), &ring.ideal_gens);
    let s_free = FPModule::free(s_ring.clone(), vec![0]);
    let omega_s = ext_module(&r_over_s, &s_free, n - d);
    let omega = omega_s.base_change(ring).minimized();
    if omega.is_zero_module() {
        return Err("canonical module computation produced zero".into());
    }
    let shift = -omega.min_degree();
    Ok(omega.shift(shift))
}

/// Is the ring Gorenstein? Both characterizations (type one, cyclic
/// canonical module) are computed and must agree.
pub fn gorenstein_test(ring: &Arc<QuotientRing>) -> Result<bool, String> {
    let rself = FPModule::free(ring.clone(), vec![0]);
    let t = module_type(&rself);
    let omega = canonical_module(ring)?;
    let mu = omega.mu();
    assert_eq!(
        t == 1,
        mu == 1,
        "type {} and canonical module mu {} disagree",
        t,
        mu
    );
    Ok(t == 1)
}
