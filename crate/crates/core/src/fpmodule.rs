//! Finitely presented graded modules: presentations, minimization, syzygies,
//! free resolutions, kernels/images/cokernels of maps, and base change.

use crate::field;
use crate::linalg::FpMatrix;
use crate::modvec::{
    kernel_gens_over_quotient, quotient_is_finite, quotient_module_gb, module_reduce,
    standard_module_monomials, ModOrder, ModPoly,
};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;
use rand::Rng;
use std::sync::{Arc, OnceLock};

/// A graded free module `⊕_j R(-twists[j])`; `twists[j]` is the degree of the
/// j-th basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModule {
    pub ring: Arc<QuotientRing>,
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: Arc<QuotientRing>, twists: Vec<i64>) -> Self {
        FreeModule { ring, twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A homogeneous map of free modules, stored column-wise: `cols[j]` is the
/// image of the j-th basis element of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub cols: Vec<ModPoly>,
}

impl ModuleMap {
    pub fn new(source: FreeModule, target: FreeModule, cols: Vec<ModPoly>) -> Self {
        assert_eq!(cols.len(), source.rank());
        let ring = &target.ring;
        let cols: Vec<ModPoly> = cols
            .into_iter()
            .map(|c| ModPoly {
                comps: c.comps.iter().map(|f| ring.normal_form(f)).collect(),
            })
            .collect();
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.rank(), target.rank());
            for (i, f) in c.comps.iter().enumerate() {
                if !f.is_zero() {
                    assert!(
                        f.is_homogeneous(&ring.poly),
                        "matrix entry ({},{}) not homogeneous",
                        i,
                        j
                    );
                    let d = f.degree(&ring.poly).unwrap();
                    assert_eq!(
                        d,
                        source.twists[j] - target.twists[i],
                        "matrix entry ({},{}) has degree {} but twists demand {}",
                        i,
                        j,
                        d,
                        source.twists[j] - target.twists[i]
                    );
                }
            }
        }
        ModuleMap { source, target, cols }
    }

    /// Parse a row-major string matrix; source twists are inferred from the
    /// entry degrees. Errors on degree-inconsistent entries.
    pub fn from_strings(
        ring: &Arc<QuotientRing>,
        target_twists: &[i64],
        rows: &[Vec<String>],
    ) -> Result<Self, String> {
        let nrows = rows.len();
        if nrows != target_twists.len() {
            return Err(format!(
                "matrix has {} rows but target rank is {}",
                nrows,
                target_twists.len()
            ));
        }
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err("ragged matrix".into());
        }
        let mut cols: Vec<ModPoly> = Vec::new();
        let mut src_twists = Vec::new();
        for j in 0..ncols {
            let mut comps = Vec::new();
            for row in rows.iter() {
                let f = ring.poly.parse(&row[j])?;
                if !f.is_homogeneous(&ring.poly) {
                    return Err(format!("entry `{}` is not homogeneous", row[j]));
                }
                comps.push(ring.normal_form(&f));
            }
            let col = ModPoly { comps };
            // infer the column twist from any nonzero entry
            let mut tw: Option<i64> = None;
            for (i, f) in col.comps.iter().enumerate() {
                if let Some(d) = f.degree(&ring.poly) {
                    let t = d + target_twists[i];
                    match tw {
                        None => tw = Some(t),
                        Some(t0) if t0 != t => {
                            return Err(format!(
                                "column {} degree-inconsistent: entry ({},{}) implies twist {} but {} was inferred",
                                j, i, j, t, t0
                            ))
                        }
                        _ => {}
                    }
                }
            }
            src_twists.push(tw.unwrap_or(0));
            cols.push(col);
        }
        let source = FreeModule::new(ring.clone(), src_twists);
        let target = FreeModule::new(ring.clone(), target_twists.to_vec());
        Ok(ModuleMap::new(source, target, cols))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j].comps[i]
    }

    /// Apply to a vector in the source ambient free module.
    pub fn apply(&self, v: &ModPoly) -> ModPoly {
        let poly = &self.target.ring.poly;
        let mut acc = ModPoly::zero(self.target.rank());
        for (j, f) in v.comps.iter().enumerate() {
            if !f.is_zero() {
                acc = acc.add(poly, &self.cols[j].mul_poly(poly, f));
            }
        }
        ModPoly {
            comps: acc
                .comps
                .iter()
                .map(|f| self.target.ring.normal_form(f))
                .collect(),
        }
    }

    /// Composite `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.source.twists, other.target.twists);
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        ModuleMap::new(other.source.clone(), self.target.clone(), cols)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(ModPoly::is_zero)
    }

    pub fn transpose(&self) -> ModuleMap {
        let ring = &self.source.ring;
        let poly = &ring.poly;
        let new_source = FreeModule::new(
            ring.clone(),
            self.target.twists.iter().map(|t| -t).collect(),
        );
        let new_target = FreeModule::new(
            ring.clone(),
            self.source.twists.iter().map(|t| -t).collect(),
        );
        let mut cols = Vec::new();
        for i in 0..self.target.rank() {
            let comps: Vec<Polynomial> = (0..self.source.rank())
                .map(|j| self.entry(i, j).clone())
                .collect();
            let _ = poly;
            cols.push(ModPoly { comps });
        }
        ModuleMap::new(new_source, new_target, cols)
    }
}

/// A finitely presented graded module `M = coker(presentation)`.
///
/// Values are immutable after construction; the module Groebner basis and the
/// minimal presentation are fill-once caches, so concurrent reads are safe.
#[derive(Debug)]
pub struct FPModule {
    pub pres: ModuleMap,
    gb: OnceLock<Vec<ModPoly>>,
    minimal: OnceLock<ModuleMap>,
}

impl Clone for FPModule {
    fn clone(&self) -> Self {
        let m = FPModule::new(self.pres.clone());
        if let Some(gb) = self.gb.get() {
            let _ = m.gb.set(gb.clone());
        }
        if let Some(min) = self.minimal.get() {
            let _ = m.minimal.set(min.clone());
        }
        m
    }
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.pres == other.pres
    }
}

impl FPModule {
    pub fn new(pres: ModuleMap) -> Self {
        FPModule {
            pres,
            gb: OnceLock::new(),
            minimal: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.pres.target.ring
    }

    pub fn free(ring: Arc<QuotientRing>, twists: Vec<i64>) -> Self {
        let target = FreeModule::new(ring.clone(), twists);
        let source = FreeModule::new(ring, Vec::new());
        FPModule::new(ModuleMap {
            source,
            target,
            cols: Vec::new(),
        })
    }

    /// `R/(g_1..g_k)` as a cyclic module.
    pub fn cyclic(ring: Arc<QuotientRing>, gens: &[Polynomial]) -> Self {
        let cols: Vec<ModPoly> = gens
            .iter()
            .filter(|g| !ring.normal_form(g).is_zero())
            .map(|g| ModPoly {
                comps: vec![ring.normal_form(g)],
            })
            .collect();
        let twists: Vec<i64> = cols
            .iter()
            .map(|c| c.comps[0].degree(&ring.poly).unwrap())
            .collect();
        let source = FreeModule::new(ring.clone(), twists);
        let target = FreeModule::new(ring, vec![0]);
        FPModule::new(ModuleMap::new(source, target, cols))
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> Self {
        let vars: Vec<Polynomial> = (0..ring.poly.n)
            .map(|i| Polynomial::var(&ring.poly, i))
            .collect();
        Self::cyclic(ring.clone(), &vars)
    }

    /// The graded maximal ideal `m = (x_1..x_n)` as a submodule of R.
    pub fn maximal_ideal(ring: &Arc<QuotientRing>) -> Self {
        let free = FPModule::free(ring.clone(), vec![0]);
        let gens: Vec<ModPoly> = (0..ring.poly.n)
            .map(|i| ModPoly {
                comps: vec![Polynomial::var(&ring.poly, i)],
            })
            .collect();
        free.submodule(gens).0
    }

    pub fn ambient_rank(&self) -> usize {
        self.pres.target.rank()
    }

    pub fn twists(&self) -> &[i64] {
        &self.pres.target.twists
    }

    /// Module GB of `im(presentation) + I·F0` over the ambient polynomial
    /// ring; normal forms against it are canonical representatives.
    pub fn gb(&self) -> &Vec<ModPoly> {
        self.gb.get_or_init(|| {
            quotient_module_gb(
                self.ring(),
                self.ambient_rank(),
                self.twists(),
                &self.pres.cols,
            )
        })
    }

    pub fn nf(&self, v: &ModPoly) -> ModPoly {
        let order = ModOrder::top(self.twists().to_vec());
        module_reduce(&self.ring().poly, &order, v, self.gb())
    }

    pub fn hilbert_function(&self, d: i64) -> usize {
        standard_module_monomials(self.ring(), self.gb(), self.ambient_rank(), self.twists(), d)
            .len()
    }

    pub fn basis_in_degree(&self, d: i64) -> Vec<(Monomial, usize)> {
        standard_module_monomials(self.ring(), self.gb(), self.ambient_rank(), self.twists(), d)
    }

    /// Coordinates of (the normal form of) `v` in the standard-monomial basis
    /// of degree `d`.
    pub fn coords_in_degree(&self, v: &ModPoly, d: i64) -> Vec<u32> {
        let basis = self.basis_in_degree(d);
        let nf = self.nf(v);
        let poly = &self.ring().poly;
        basis
            .iter()
            .map(|(m, c)| nf.comps[*c].coeff(poly, m))
            .collect()
    }

    pub fn is_finite_length(&self) -> bool {
        if self.ambient_rank() == 0 {
            return true;
        }
        quotient_is_finite(self.ring(), self.gb(), self.ambient_rank(), self.twists())
    }

    /// Smallest degree that can carry a nonzero element.
    pub fn min_degree(&self) -> i64 {
        self.twists().iter().copied().min().unwrap_or(0)
    }

    /// Sound upper bound for the top degree of a finite-length module.
    pub fn degree_bound(&self) -> i64 {
        assert!(self.is_finite_length(), "degree bound needs finite length");
        let ring = self.ring();
        let poly = &ring.poly;
        let order = ModOrder::top(self.twists().to_vec());
        let mut best = self.min_degree();
        for c in 0..self.ambient_rank() {
            let mut bound = self.twists()[c];
            let dead = self.gb().iter().any(|g| {
                let (lc, m, _) = order.leading(poly, g).unwrap();
                lc == c && m.is_one()
            });
            if dead {
                continue;
            }
            for var in 0..poly.n {
                // minimal pure power of this variable among component leads
                let mut min_pow: Option<u32> = None;
                for g in self.gb() {
                    let (lc, m, _) = order.leading(poly, g).unwrap();
                    if lc == c
                        && m.0
                            .iter()
                            .enumerate()
                            .all(|(i, &e)| if i == var { true } else { e == 0 })
                        && m.0[var] > 0
                    {
                        min_pow = Some(min_pow.map_or(m.0[var], |p| p.min(m.0[var])));
                    }
                }
                let pw = min_pow.expect("finite length guarantees pure powers");
                bound += (pw as i64 - 1) * poly.weights[var] as i64;
            }
            best = best.max(bound);
        }
        best
    }

    /// Total k-dimension of a finite length module.
    pub fn length(&self) -> usize {
        assert!(self.is_finite_length(), "length requires finite length");
        if self.ambient_rank() == 0 {
            return 0;
        }
        let mut total = 0;
        for d in self.min_degree()..=self.degree_bound() {
            total += self.hilbert_function(d);
        }
        total
    }

    pub fn is_zero_module(&self) -> bool {
        self.mu() == 0
    }

    /// Minimal presentation: no degree-zero entries; cokernel unchanged.
    pub fn minimal_presentation(&self) -> &ModuleMap {
        self.minimal.get_or_init(|| {
            let (twists, cols, _) = prune_units(
                self.ring(),
                self.twists().to_vec(),
                self.pres.cols.clone(),
            );
            let ring = self.ring().clone();
            let src_twists: Vec<i64> = cols
                .iter()
                .map(|c| {
                    c.degree(&ring.poly, &twists)
                        .expect("zero columns are pruned")
                })
                .collect();
            ModuleMap::new(
                FreeModule::new(ring.clone(), src_twists),
                FreeModule::new(ring, twists),
                cols,
            )
        })
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimal_presentation().target.rank()
    }

    /// The module presented minimally (isomorphic to `self`).
    pub fn minimized(&self) -> FPModule {
        FPModule::new(self.minimal_presentation().clone())
    }

    /// Is the module free (minimal presentation has no relations)?
    pub fn is_free(&self) -> bool {
        self.minimal_presentation().cols.iter().all(ModPoly::is_zero)
    }

    pub fn direct_sum(parts: &[&FPModule]) -> FPModule {
        let ring = parts
            .first()
            .expect("direct sum of no modules")
            .ring()
            .clone();
        let mut twists = Vec::new();
        let mut src_twists = Vec::new();
        for m in parts {
            twists.extend_from_slice(m.twists());
            src_twists.extend_from_slice(&m.pres.source.twists);
        }
        let rank: usize = twists.len();
        let mut cols = Vec::new();
        let mut row_off = 0;
        for m in parts {
            for c in &m.pres.cols {
                let mut v = ModPoly::zero(rank);
                for (i, f) in c.comps.iter().enumerate() {
                    v.comps[row_off + i] = f.clone();
                }
                cols.push(v);
            }
            row_off += m.ambient_rank();
        }
        FPModule::new(ModuleMap::new(
            FreeModule::new(ring.clone(), src_twists),
            FreeModule::new(ring, twists),
            cols,
        ))
    }

    pub fn power(&self, r: usize) -> FPModule {
        let parts: Vec<&FPModule> = (0..r).map(|_| self).collect();
        if r == 0 {
            return FPModule::free(self.ring().clone(), Vec::new());
        }
        FPModule::direct_sum(&parts)
    }

    /// Shift all degrees by `s`: generators move from degree `t` to `t + s`.
    pub fn shift(&self, s: i64) -> FPModule {
        let ring = self.ring().clone();
        FPModule::new(ModuleMap {
            source: FreeModule::new(
                ring.clone(),
                self.pres.source.twists.iter().map(|t| t + s).collect(),
            ),
            target: FreeModule::new(ring, self.twists().iter().map(|t| t + s).collect()),
            cols: self.pres.cols.clone(),
        })
    }

    /// Presentation of the submodule of `self` generated by the given ambient
    /// vectors; also returns the (normal forms of the) inclusion generators.
    pub fn submodule(&self, gens: Vec<ModPoly>) -> (FPModule, Vec<ModPoly>) {
        let ring = self.ring().clone();
        let gens: Vec<ModPoly> = gens
            .into_iter()
            .map(|g| self.nf(&g))
            .filter(|g| !g.is_zero())
            .collect();
        let k = gens.len();
        let sub_twists: Vec<i64> = gens
            .iter()
            .map(|g| g.degree(&ring.poly, self.twists()).unwrap())
            .collect();
        // relations: combinations of gens landing in im(presentation)
        let mut all = gens.clone();
        all.extend(self.pres.cols.iter().cloned());
        let syz = kernel_gens_over_quotient(&ring, self.ambient_rank(), self.twists(), &all);
        let rel_cols: Vec<ModPoly> = syz
            .iter()
            .map(|s| ModPoly {
                comps: s.comps[..k].to_vec(),
            })
            .filter(|v| !v.is_zero())
            .collect();
        let rel_twists: Vec<i64> = rel_cols
            .iter()
            .map(|c| c.degree(&ring.poly, &sub_twists).unwrap())
            .collect();
        let m = FPModule::new(ModuleMap::new(
            FreeModule::new(ring.clone(), rel_twists),
            FreeModule::new(ring, sub_twists),
            rel_cols,
        ));
        (m, gens)
    }

    /// Base change along `R -> R'` where the target ring has a larger ideal
    /// over the same polynomial ring: `M ⊗_R R'`.
    pub fn base_change(&self, new_ring: &Arc<QuotientRing>) -> FPModule {
        assert_eq!(self.ring().poly, new_ring.poly);
        let cols: Vec<ModPoly> = self
            .pres
            .cols
            .iter()
            .map(|c| ModPoly {
                comps: c.comps.iter().map(|f| new_ring.normal_form(f)).collect(),
            })
            .collect();
        // columns may become zero or inhomogeneous-free; re-derive twists
        let mut new_cols = Vec::new();
        let mut src_twists = Vec::new();
        for (j, c) in cols.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            src_twists.push(self.pres.source.twists[j]);
            new_cols.push(c);
        }
        FPModule::new(ModuleMap::new(
            FreeModule::new(new_ring.clone(), src_twists),
            FreeModule::new(new_ring.clone(), self.twists().to_vec()),
            new_cols,
        ))
    }

    /// `M/fM` over `R/(f)`; requires `f` regular on `M`.
    pub fn cut_down(&self, f: &Polynomial) -> Result<FPModule, String> {
        if !is_regular_element(f, self) {
            return Err(format!(
                "{} is not a regular element on the module",
                f.display(&self.ring().poly)
            ));
        }
        let new_ring = self.ring().quotient_by(std::slice::from_ref(f));
        Ok(self.base_change(&new_ring))
    }
}

/// Kill degree-zero pivots in a relation matrix. Returns the surviving target
/// twists, the updated columns, and the indices of surviving rows.
pub fn prune_units(
    ring: &Arc<QuotientRing>,
    mut twists: Vec<i64>,
    cols: Vec<ModPoly>,
) -> (Vec<i64>, Vec<ModPoly>, Vec<usize>) {
    let poly = ring.poly.clone();
    let mut cols: Vec<ModPoly> = cols
        .into_iter()
        .map(|c| ModPoly {
            comps: c.comps.iter().map(|f| ring.normal_form(f)).collect(),
        })
        .filter(|c| !c.is_zero())
        .collect();
    let mut rows: Vec<usize> = (0..twists.len()).collect();
    'outer: loop {
        for j in 0..cols.len() {
            for i in 0..rows.len() {
                if let Some(u) = cols[j].comps[i].as_unit(&poly) {
                    if u == 0 {
                        continue;
                    }
                    let uinv = field::inv(poly.p, u);
                    let pivot_col = cols[j].clone();
                    for (l, col) in cols.iter_mut().enumerate() {
                        if l == j {
                            continue;
                        }
                        let c = col.comps[i].clone();
                        if c.is_zero() {
                            continue;
                        }
                        let corr = pivot_col
                            .mul_poly(&poly, &c)
                            .scale(&poly, uinv);
                        *col = col.sub(&poly, &corr);
                        col.comps = col.comps.iter().map(|f| ring.normal_form(f)).collect();
                    }
                    cols.remove(j);
                    for col in &mut cols {
                        col.comps.remove(i);
                    }
                    rows.remove(i);
                    twists.remove(i);
                    cols.retain(|c| !c.is_zero());
                    continue 'outer;
                }
            }
        }
        break;
    }
    (twists, cols, rows)
}

/// A resolution `F_L -> ... -> F_1 -> F_0` of a module; `maps[i]` is
/// `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target_twists: Vec<i64>,
    pub maps: Vec<ModuleMap>,
    pub minimal: bool,
}

impl Resolution {
    pub fn betti(&self, i: usize) -> usize {
        if i == 0 {
            self.target_twists.len()
        } else {
            self.maps
                .get(i - 1)
                .map_or(0, |m| m.source.rank())
        }
    }

    pub fn free_module(&self, i: usize) -> FreeModule {
        if i == 0 {
            FreeModule::new(self.maps[0].target.ring.clone(), self.target_twists.clone())
        } else {
            self.maps[i - 1].source.clone()
        }
    }
}

/// Kernel of a free-module map: returns a map whose image is exactly the
/// kernel of the input.
pub fn syzygy(map: &ModuleMap) -> ModuleMap {
    let ring = &map.target.ring;
    let gens = kernel_gens_over_quotient(ring, map.target.rank(), &map.target.twists, &map.cols);
    let src_twists: Vec<i64> = gens
        .iter()
        .map(|g| g.degree(&ring.poly, &map.source.twists).unwrap())
        .collect();
    ModuleMap::new(
        FreeModule::new(ring.clone(), src_twists),
        map.source.clone(),
        gens,
    )
}

/// Minimal free resolution of `M` to homological degree `length`:
/// `F_length -> ... -> F_1 -> F_0 -> M -> 0`.
pub fn resolution(m: &FPModule, length: usize) -> Resolution {
    let ring = m.ring().clone();
    let min = m.minimal_presentation().clone();
    let mut maps: Vec<ModuleMap> = Vec::new();
    let target_twists = min.target.twists.clone();
    if length == 0 {
        return Resolution {
            target_twists,
            maps,
            minimal: true,
        };
    }
    // ensure the presentation columns minimally generate the first syzygy
    let mut current_target = min.target.clone();
    let mut gens = min.cols.clone();
    for _step in 1..=length {
        if gens.is_empty() {
            maps.push(ModuleMap::new(
                FreeModule::new(ring.clone(), Vec::new()),
                current_target.clone(),
                Vec::new(),
            ));
            current_target = FreeModule::new(ring.clone(), Vec::new());
            continue;
        }
        // relations among the generators at the free level
        let rels = kernel_gens_over_quotient(
            &ring,
            current_target.rank(),
            &current_target.twists,
            &gens,
        );
        let (gens_min, rels_min) = prune_generators(&ring, gens, rels);
        let src_twists: Vec<i64> = gens_min
            .iter()
            .map(|g| g.degree(&ring.poly, &current_target.twists).unwrap())
            .collect();
        let map = ModuleMap::new(
            FreeModule::new(ring.clone(), src_twists.clone()),
            current_target.clone(),
            gens_min,
        );
        current_target = map.source.clone();
        maps.push(map);
        gens = rels_min;
    }
    Resolution {
        target_twists,
        maps,
        minimal: true,
    }
}

/// Given generators `gens` of a submodule and a generating set `rels` of their
/// relation module, remove redundant generators (unit pivots in `rels`).
/// Returns the surviving generators together with the updated relations,
/// which generate the relation module of the survivors.
fn prune_generators(
    ring: &Arc<QuotientRing>,
    gens: Vec<ModPoly>,
    rels: Vec<ModPoly>,
) -> (Vec<ModPoly>, Vec<ModPoly>) {
    let twists: Vec<i64> = (0..gens.len()).map(|_| 0).collect(); // placeholder degrees
    let (_, rels_min, surviving) = prune_units(ring, twists, rels);
    let gens_min: Vec<ModPoly> = surviving.iter().map(|&i| gens[i].clone()).collect();
    (gens_min, rels_min)
}

/// A map of finitely presented modules, given by images of the target-ambient
/// generators of the source.
#[derive(Clone, Debug)]
pub struct FPMap {
    pub source: FPModule,
    pub target: FPModule,
    pub cols: Vec<ModPoly>,
    /// degree shift of the map (0 for degree-preserving)
    pub shift: i64,
}

impl FPMap {
    /// Validates that the matrix induces a map on cokernels; reports the
    /// first violating relation column otherwise.
    pub fn new(
        source: FPModule,
        target: FPModule,
        cols: Vec<ModPoly>,
        shift: i64,
    ) -> Result<Self, String> {
        assert_eq!(cols.len(), source.ambient_rank());
        let poly = source.ring().poly.clone();
        let cols: Vec<ModPoly> = cols.iter().map(|c| target.nf(c)).collect();
        for (j, c) in cols.iter().enumerate() {
            if let Some(d) = c.degree(&poly, target.twists()) {
                if d != source.twists()[j] + shift {
                    return Err(format!(
                        "image of generator {} has degree {} but expected {}",
                        j,
                        d,
                        source.twists()[j] + shift
                    ));
                }
            }
        }
        let f = FPMap {
            source,
            target,
            cols,
            shift,
        };
        for (j, rel) in f.source.pres.cols.iter().enumerate() {
            let img = f.apply_ambient(rel);
            if !f.target.nf(&img).is_zero() {
                return Err(format!(
                    "matrix does not induce a map on cokernels: relation column {} violated",
                    j
                ));
            }
        }
        Ok(f)
    }

    pub fn zero(source: FPModule, target: FPModule) -> Self {
        let cols = vec![ModPoly::zero(target.ambient_rank()); source.ambient_rank()];
        FPMap {
            source,
            target,
            cols,
            shift: 0,
        }
    }

    pub fn identity(m: &FPModule) -> Self {
        let poly = &m.ring().poly;
        let cols = (0..m.ambient_rank())
            .map(|i| ModPoly::unit(m.ambient_rank(), i, poly))
            .collect();
        FPMap {
            source: m.clone(),
            target: m.clone(),
            cols,
            shift: 0,
        }
    }

    /// Multiplication by a homogeneous ring element.
    pub fn scalar_mul(m: &FPModule, f: &Polynomial) -> Self {
        let poly = &m.ring().poly;
        let d = f.degree(poly).unwrap_or(0);
        let cols = (0..m.ambient_rank())
            .map(|i| ModPoly::unit(m.ambient_rank(), i, poly).mul_poly(poly, f))
            .collect();
        FPMap {
            source: m.clone(),
            target: m.clone(),
            cols,
            shift: d,
        }
    }

    pub fn apply_ambient(&self, v: &ModPoly) -> ModPoly {
        let poly = &self.target.ring().poly;
        let mut acc = ModPoly::zero(self.target.ambient_rank());
        for (j, f) in v.comps.iter().enumerate() {
            if !f.is_zero() {
                acc = acc.add(poly, &self.cols[j].mul_poly(poly, f));
            }
        }
        acc
    }

    /// Kernel as an fp module plus the inclusion generators in the source
    /// ambient module.
    pub fn kernel(&self) -> (FPModule, Vec<ModPoly>) {
        let ring = self.source.ring().clone();
        let rs = self.source.ambient_rank();
        // solve f(v) = B w over R
        let mut all = self.cols.clone();
        all.extend(self.target.pres.cols.iter().cloned());
        // twists of the target ambient shifted by the map degree so columns
        // are degree-consistent
        let ker = kernel_gens_over_quotient(
            &ring,
            self.target.ambient_rank(),
            self.target.twists(),
            &all,
        );
        let pre_gens: Vec<ModPoly> = ker
            .iter()
            .map(|s| ModPoly {
                comps: s.comps[..rs].to_vec(),
            })
            .filter(|v| !v.is_zero())
            .collect();
        self.source.submodule(pre_gens)
    }

    pub fn image(&self) -> (FPModule, Vec<ModPoly>) {
        self.target.submodule(self.cols.clone())
    }

    pub fn cokernel(&self) -> FPModule {
        let ring = self.target.ring().clone();
        let mut cols = self.target.pres.cols.clone();
        let mut src_twists = self.target.pres.source.twists.clone();
        for (j, c) in self.cols.iter().enumerate() {
            if !c.is_zero() {
                cols.push(c.clone());
                src_twists.push(self.source.twists()[j] + self.shift);
            }
        }
        FPModule::new(ModuleMap::new(
            FreeModule::new(ring.clone(), src_twists),
            FreeModule::new(ring, self.target.twists().to_vec()),
            cols,
        ))
    }

    /// Bijective on cokernels? (zero cokernel and zero kernel)
    pub fn is_isomorphism(&self) -> bool {
        if !self.cokernel().is_zero_module() {
            return false;
        }
        self.kernel().0.is_zero_module()
    }
}

/// Is multiplication by `f` injective on `M`? Rejects degree-0 input.
pub fn is_regular_element(f: &Polynomial, m: &FPModule) -> bool {
    let ring = m.ring();
    let nf = ring.normal_form(f);
    let deg = nf.degree(&ring.poly);
    assert!(
        deg.map_or(false, |d| d > 0),
        "regular-element test requires a form of positive degree"
    );
    let mul = FPMap::scalar_mul(m, &nf);
    mul.kernel().0.is_zero_module()
}

/// Randomized search for a general regular sequence on all listed modules.
///
/// Forms are random k-combinations of the degree-w standard monomials with
/// `w = lcm(weights)`; each stage is verified with [`is_regular_element`] on
/// every module cut down by the previous stages. Deterministic given the seed.
pub fn general_regular_sequence(
    mods: &[&FPModule],
    length: usize,
    seed: u64,
    retries: usize,
) -> Result<Vec<Polynomial>, String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    assert!(!mods.is_empty());
    let ring0 = mods[0].ring().clone();
    let poly = ring0.poly.clone();
    let w = poly.weight_lcm();
    let mut current: Vec<FPModule> = mods.iter().map(|m| (*m).clone()).collect();
    let mut current_ring = ring0;
    let mut found: Vec<Polynomial> = Vec::new();
    for _stage in 0..length {
        let monos = current_ring.standard_monomials(w);
        if monos.is_empty() {
            return Err("no forms of the search degree exist".into());
        }
        let mut ok = None;
        for _try in 0..retries {
            let mut f = Polynomial::zero();
            for m in &monos {
                let c = rng.gen_range(0..poly.p);
                if c != 0 {
                    f = f.add(&poly, &Polynomial::term(&poly, m.clone(), c));
                }
            }
            if f.is_zero() {
                continue;
            }
            if current
                .iter()
                .all(|m| !m.is_zero_module() && is_regular_element(&f, m))
            {
                ok = Some(f);
                break;
            }
        }
        let Some(f) = ok else {
            return Err(format!(
                "no regular form found after {} retries (depth obstruction or unlucky small field)",
                retries
            ));
        };
        current = current
            .iter()
            .map(|m| m.cut_down(&f).expect("verified regular"))
            .collect();
        current_ring = current[0].ring().clone();
        found.push(f);
    }
    Ok(found)
}

/// Random homogeneous element of R of the given degree.
pub fn random_ring_element<R: Rng>(
    ring: &Arc<QuotientRing>,
    d: i64,
    rng: &mut R,
) -> Polynomial {
    let poly = &ring.poly;
    let mut f = Polynomial::zero();
    for m in monomials_of_degree(&poly.weights, d) {
        let c = rng.gen_range(0..poly.p);
        if c != 0 {
            f = f.add(poly, &Polynomial::term(poly, m, c));
        }
    }
    ring.normal_form(&f)
}

/// Random cokernel over an Artinian ring: random generator twists and random
/// homogeneous relation columns. Always finite length since the ring is.
pub fn random_artinian_module<R: Rng>(
    ring: &Arc<QuotientRing>,
    max_gens: usize,
    max_rels: usize,
    rng: &mut R,
) -> FPModule {
    assert!(ring.is_artinian());
    let poly = &ring.poly;
    let maxw = *poly.weights.iter().max().unwrap() as i64;
    let ngens = rng.gen_range(1..=max_gens.max(1));
    let twists: Vec<i64> = (0..ngens).map(|_| rng.gen_range(0..=1) as i64).collect();
    let nrels = rng.gen_range(0..=max_rels);
    let lo = *twists.iter().min().unwrap();
    let hi = *twists.iter().max().unwrap();
    let mut cols = Vec::new();
    let mut src_twists = Vec::new();
    for _ in 0..nrels {
        let ct = rng.gen_range(hi + 1..=hi + 2 * maxw);
        let mut col = ModPoly::zero(ngens);
        for (i, &t) in twists.iter().enumerate() {
            if ct - t > 0 {
                col.comps[i] = random_ring_element(ring, ct - t, rng);
            }
        }
        if !col.is_zero() {
            src_twists.push(ct);
            cols.push(col);
        }
    }
    let _ = lo;
    FPModule::new(ModuleMap::new(
        FreeModule::new(ring.clone(), src_twists),
        FreeModule::new(ring.clone(), twists),
        cols,
    ))
}

/// Dense matrix of the degree-`d` component of multiplication by `f` on `M`
/// (used by tests as an independent check of regularity).
pub fn multiplication_matrix(m: &FPModule, f: &Polynomial, d: i64) -> FpMatrix {
    let ring = m.ring();
    let poly = &ring.poly;
    let fd = f.degree(poly).unwrap_or(0);
    let src = m.basis_in_degree(d);
    let dst = m.basis_in_degree(d + fd);
    let mut mat = FpMatrix::zero(poly.p, dst.len(), src.len());
    for (j, (mono, comp)) in src.iter().enumerate() {
        let mut v = ModPoly::zero(m.ambient_rank());
        v.comps[*comp] = Polynomial::term(poly, mono.clone(), 1).mul(poly, f);
        let coords = m.coords_in_degree(&v, d + fd);
        for (i, &c) in coords.iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    mat
}
