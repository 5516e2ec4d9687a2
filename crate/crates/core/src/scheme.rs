//! Cut-and-project schemes: a lattice in `R^m x R^n` with its two
//! projections.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Context, ExactNumber};
use crate::intsolve::{self, IntSolution};
use crate::vector::{self, Vector};

/// Result of a group membership query. `Member` carries integer coordinates
/// with respect to the group's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Member(#[serde(serialize_with = "crate::report::integers")] Vec<BigInt>),
    NotMember,
    Unknown(String),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn witness(&self) -> Option<&[BigInt]> {
        match self {
            Membership::Member(z) => Some(z),
            _ => None,
        }
    }
}

/// A finitely generated translation group `G ⊂ R^n` with a membership oracle.
pub trait TranslationGroup {
    fn dim(&self) -> usize;
    fn context(&self) -> &Context;
    fn member(&self, v: &[ExactNumber]) -> Result<Membership>;
    /// The group element with the given witness coordinates.
    fn element(&self, witness: &[BigInt]) -> Vector;
}

/// The group generated over Z by explicit vectors.
#[derive(Clone, Debug)]
pub struct ZSpan {
    ctx: Context,
    dim: usize,
    gens: Vec<Vector>,
}

impl ZSpan {
    pub fn new(ctx: &Context, dim: usize, gens: Vec<Vector>) -> Result<Self> {
        for g in &gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().any(|x| x.context() != ctx) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(ZSpan {
            ctx: ctx.clone(),
            dim,
            gens,
        })
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    /// The subgroup image under the linear functional `v ↦ <f, v>`.
    pub fn project(&self, f: &[ExactNumber]) -> Result<ZSpan> {
        let gens = self
            .gens
            .iter()
            .map(|g| Ok(vec![vector::dot(f, g)?]))
            .collect::<Result<Vec<_>>>()?;
        ZSpan::new(&self.ctx, 1, gens)
    }

    /// Coefficient system `Σ z_k gens[k] = v`, one equation per coordinate
    /// and coefficient slot.
    fn system(&self, v: &[ExactNumber]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let w = self.ctx.width();
        let mut a = Vec::with_capacity(self.dim * w);
        let mut b = Vec::with_capacity(self.dim * w);
        for (i, vi) in v.iter().enumerate() {
            for c in 0..w {
                a.push(self.gens.iter().map(|g| g[i].coeffs()[c].clone()).collect());
                b.push(vi.coeffs()[c].clone());
            }
        }
        (a, b)
    }

    pub fn solve(&self, v: &[ExactNumber]) -> Result<IntSolution> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if v.iter().any(|x| x.context() != &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let (a, b) = self.system(v);
        Ok(intsolve::solve(&a, &b, self.gens.len()))
    }
}

impl TranslationGroup for ZSpan {
    fn dim(&self) -> usize {
        self.dim
    }

    fn context(&self) -> &Context {
        &self.ctx
    }

    fn member(&self, v: &[ExactNumber]) -> Result<Membership> {
        Ok(match self.solve(v)? {
            IntSolution::Solvable { z, .. } => Membership::Member(z),
            _ if self.ctx.is_independent() => Membership::NotMember,
            _ => Membership::Unknown(format!(
                "coefficient matching failed for {} over a context without declared independence",
                vector::format(v)
            )),
        })
    }

    fn element(&self, witness: &[BigInt]) -> Vector {
        vector::combine(&self.ctx, &self.gens, witness, self.dim)
    }
}

/// A lattice `Γ = B Z^(m+n)`; `basis` is stored by rows, columns generate.
#[derive(Clone, Debug)]
pub struct Lattice {
    ctx: Context,
    m: usize,
    n: usize,
    basis: Vec<Vector>,
    det: ExactNumber,
    det_abs: ExactNumber,
}

fn determinant(ctx: &Context, rows: &[Vector]) -> Result<ExactNumber> {
    fn go(
        rows: &[Vector],
        k: usize,
        mask: u32,
        memo: &mut HashMap<u32, ExactNumber>,
        ctx: &Context,
    ) -> Result<ExactNumber> {
        if k == rows.len() {
            return Ok(ExactNumber::one(ctx));
        }
        if let Some(v) = memo.get(&mask) {
            return Ok(v.clone());
        }
        let mut acc = ExactNumber::zero(ctx);
        let mut pos = 0;
        for j in 0..rows.len() {
            if mask & (1 << j) != 0 {
                continue;
            }
            let e = &rows[k][j];
            if !e.is_zero() {
                let minor = go(rows, k + 1, mask | (1 << j), memo, ctx)?;
                let term = e.mul(&minor)?;
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        Ok(acc)
    }
    go(rows, 0, 0, &mut HashMap::new(), ctx)
}

impl Lattice {
    /// Builds a lattice from a square basis matrix given by rows; the first
    /// `m` rows are physical coordinates.
    pub fn new(ctx: &Context, m: usize, basis: Vec<Vector>) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 || m > dim || dim > 16 {
            return Err(Error::InvalidArgument(format!("bad lattice shape m={m}, rank {dim}")));
        }
        for row in &basis {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            if row.iter().any(|x| x.context() != ctx) {
                return Err(Error::ContextMismatch);
            }
        }
        let det = determinant(ctx, &basis)?;
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        let det_abs = det.abs()?;
        Ok(Lattice {
            ctx: ctx.clone(),
            m,
            n: dim - m,
            basis,
            det,
            det_abs,
        })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    pub fn rows(&self) -> &[Vector] {
        &self.basis
    }

    pub fn det(&self) -> &ExactNumber {
        &self.det
    }

    pub fn det_abs(&self) -> &ExactNumber {
        &self.det_abs
    }

    pub fn column(&self, j: usize) -> Vector {
        self.basis.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.rank()).map(|j| self.column(j)).collect()
    }

    /// `B z`.
    pub fn apply(&self, z: &[BigInt]) -> Vector {
        vector::combine(&self.ctx, &self.columns(), z, self.rank())
    }
}

/// Whether `p1` restricted to the lattice is one-to-one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Injectivity {
    Injective,
    /// A nonzero lattice vector with vanishing physical part.
    NotInjective(#[serde(serialize_with = "crate::report::integers")] Vec<BigInt>),
    /// Undecided because the context does not declare independence.
    Assumed,
}

#[derive(Clone, Debug)]
pub struct HeckeData {
    pub alpha: Vector,
    pub beta: Vector,
}

#[derive(Clone, Debug)]
pub struct Scheme {
    lattice: Lattice,
    injectivity: Injectivity,
    p2_group: ZSpan,
    hecke: Option<HeckeData>,
}

/// A lattice point with its integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    pub z: Vec<BigInt>,
    pub embedded: Vector,
    m: usize,
}

impl LatticeVector {
    pub fn physical(&self) -> &[ExactNumber] {
        &self.embedded[..self.m]
    }

    pub fn internal(&self) -> &[ExactNumber] {
        &self.embedded[self.m..]
    }
}

/// A closed axis-parallel box with exact corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBox {
    pub lo: Vector,
    pub hi: Vector,
}

impl ExactBox {
    pub fn new(lo: Vector, hi: Vector) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        Ok(ExactBox { lo, hi })
    }

    pub fn interval(lo: ExactNumber, hi: ExactNumber) -> Self {
        ExactBox {
            lo: vec![lo],
            hi: vec![hi],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> Result<bool> {
        for (a, b) in self.lo.iter().zip(&self.hi) {
            if b.lt(a)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn contains(&self, v: &[ExactNumber]) -> Result<bool> {
        for ((a, b), x) in self.lo.iter().zip(&self.hi).zip(v) {
            if x.lt(a)? || b.lt(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn volume(&self) -> Result<ExactNumber> {
        let ctx = self
            .lo
            .first()
            .map(|x| x.context().clone())
            .ok_or_else(|| Error::InvalidArgument("zero-dimensional box".into()))?;
        self.lo
            .iter()
            .zip(&self.hi)
            .try_fold(ExactNumber::one(&ctx), |acc, (a, b)| acc.mul(&b.try_sub(a)?))
    }
}

impl Scheme {
    pub fn new(lattice: Lattice) -> Result<Self> {
        let ctx = lattice.ctx.clone();
        let m = lattice.m;
        let gens = lattice
            .columns()
            .into_iter()
            .map(|c| c[m..].to_vec())
            .collect();
        let p2_group = ZSpan::new(&ctx, lattice.n, gens)?;
        let injectivity = p1_injectivity(&lattice);
        Ok(Scheme {
            lattice,
            injectivity,
            p2_group,
            hecke: None,
        })
    }

    /// `Z^(m+n)` with the identity basis.
    pub fn trivial(ctx: &Context, m: usize, n: usize) -> Result<Self> {
        let dim = m + n;
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| ExactNumber::from_i64(ctx, (i == j) as i64))
                    .collect()
            })
            .collect();
        Scheme::new(Lattice::new(ctx, m, basis)?)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn context(&self) -> &Context {
        &self.lattice.ctx
    }

    pub fn m(&self) -> usize {
        self.lattice.m
    }

    pub fn n(&self) -> usize {
        self.lattice.n
    }

    pub fn injectivity(&self) -> &Injectivity {
        &self.injectivity
    }

    pub fn hecke(&self) -> Option<&HeckeData> {
        self.hecke.as_ref()
    }

    /// `p2(Γ)` as a group generated by the internal parts of the basis.
    pub fn p2_group(&self) -> &ZSpan {
        &self.p2_group
    }

    pub fn p1(&self, v: &[ExactNumber]) -> Vector {
        v[..self.m()].to_vec()
    }

    pub fn p2(&self, v: &[ExactNumber]) -> Vector {
        v[self.m()..].to_vec()
    }

    pub fn lattice_vector(&self, z: Vec<BigInt>) -> LatticeVector {
        let embedded = self.lattice.apply(&z);
        LatticeVector {
            z,
            embedded,
            m: self.m(),
        }
    }

    /// Decides `v ∈ p2(Γ)`; a `Member` witness is the lattice coordinate
    /// vector `z` with `p2(B z) = v`.
    pub fn member_p2(&self, v: &[ExactNumber]) -> Result<Membership> {
        if v.iter().any(|x| x.context() != self.context()) {
            return Err(Error::ContextMismatch);
        }
        match &self.hecke {
            Some(h) => hecke_member(self.context(), h, v),
            None => self.p2_group.member(v),
        }
    }

    /// Every lattice point with `p1 ∈ phys` and `p2 ∈ internal`, in
    /// lexicographic order of `z`.
    pub fn enumerate_lattice(&self, phys: &ExactBox, internal: &ExactBox) -> Result<Vec<LatticeVector>> {
        if phys.dim() != self.m() || internal.dim() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.m() + self.n(),
                got: phys.dim() + internal.dim(),
            });
        }
        if phys.is_empty()? || internal.is_empty()? {
            return Ok(Vec::new());
        }
        let lo: Vector = phys.lo.iter().chain(&internal.lo).cloned().collect();
        let hi: Vector = phys.hi.iter().chain(&internal.hi).cloned().collect();
        let full = ExactBox { lo, hi };
        let mut out = Vec::new();
        Enumerator::new(self, &full)?.run(&mut out)?;
        Ok(out)
    }
}

impl TranslationGroup for Scheme {
    fn dim(&self) -> usize {
        self.n()
    }

    fn context(&self) -> &Context {
        self.lattice.context()
    }

    fn member(&self, v: &[ExactNumber]) -> Result<Membership> {
        self.member_p2(v)
    }

    fn element(&self, witness: &[BigInt]) -> Vector {
        self.p2(&self.lattice.apply(witness))
    }
}

/// Injectivity of `p1` on the lattice, decided through the coefficient
/// system of the physical rows.
fn p1_injectivity(lat: &Lattice) -> Injectivity {
    let rows: Vec<Vector> = (0..lat.rank())
        .map(|j| lat.column(j)[..lat.m].to_vec())
        .collect();
    let ctx = &lat.ctx;
    let w = ctx.width();
    let mut a = Vec::new();
    for i in 0..lat.m {
        for c in 0..w {
            a.push(rows.iter().map(|col| col[i].coeffs()[c].clone()).collect::<Vec<_>>());
        }
    }
    let zero = vec![BigRational::zero(); a.len()];
    match intsolve::solve(&a, &zero, lat.rank()) {
        IntSolution::Solvable { kernel, .. } if !kernel.is_empty() => {
            Injectivity::NotInjective(kernel[0].clone())
        }
        _ if ctx.is_independent() => Injectivity::Injective,
        _ => Injectivity::Assumed,
    }
}

fn coeff_rank(vals: &[ExactNumber]) -> usize {
    let rows: Vec<Vec<BigRational>> = vals.iter().map(|x| x.coeffs().to_vec()).collect();
    intsolve::rank(&rows)
}

/// The scheme with lattice `{(n + <β, nα + m>, nα + m)}`.
pub fn make_hecke_scheme(alpha: Vector, beta: Vector) -> Result<Scheme> {
    let d = alpha.len();
    if d == 0 || beta.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d.max(1),
            got: beta.len(),
        });
    }
    let ctx = alpha[0].context().clone();
    if alpha.iter().chain(&beta).any(|x| x.context() != &ctx) {
        return Err(Error::ContextMismatch);
    }
    let one = ExactNumber::one(&ctx);
    let mut cond1 = vec![one.clone()];
    cond1.extend(alpha.iter().cloned());
    if coeff_rank(&cond1) < d + 1 {
        return Err(Error::DependenceDetected(format!(
            "1, {} are linearly dependent over Q",
            vector::format(&alpha)
        )));
    }
    let ba = vector::dot(&beta, &alpha)?;
    let lead = &one + &ba;
    let mut cond2 = beta.clone();
    cond2.push(lead.clone());
    if coeff_rank(&cond2) < d + 1 {
        return Err(Error::DependenceDetected(format!(
            "{}, 1 + <β, α> are linearly dependent over Q",
            vector::format(&beta)
        )));
    }
    // rows: physical row then d internal rows; columns: (1+<β,α>, α), (β_i, e_i)
    let dim = d + 1;
    let mut basis = vec![vector::zeros(&ctx, dim); dim];
    basis[0][0] = lead;
    for i in 0..d {
        basis[i + 1][0] = alpha[i].clone();
        basis[0][i + 1] = beta[i].clone();
        basis[i + 1][i + 1] = one.clone();
    }
    let lattice = Lattice::new(&ctx, 1, basis)?;
    let mut scheme = Scheme::new(lattice)?;
    scheme.hecke = Some(HeckeData { alpha, beta });
    Ok(scheme)
}

/// `v ∈ Zα + Z^d` by coefficient matching; witness `(n, m_1..m_d)`.
fn hecke_member(ctx: &Context, h: &HeckeData, v: &[ExactNumber]) -> Result<Membership> {
    let d = h.alpha.len();
    if v.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: v.len(),
        });
    }
    let undecided = || {
        if ctx.is_independent() {
            Membership::NotMember
        } else {
            Membership::Unknown(format!(
                "coefficient matching failed for {} over a context without declared independence",
                vector::format(v)
            ))
        }
    };
    // n is forced by any irrational coefficient of any α_i
    let mut n: Option<BigRational> = None;
    'outer: for (a, x) in h.alpha.iter().zip(v) {
        for c in 1..ctx.width() {
            let ac = &a.coeffs()[c];
            if !ac.is_zero() {
                n = Some(&x.coeffs()[c] / ac);
                break 'outer;
            }
        }
    }
    let n = n.unwrap_or_else(BigRational::zero);
    if !n.is_integer() {
        return Ok(undecided());
    }
    let n = n.to_integer();
    let mut witness = vec![n.clone()];
    for (a, x) in h.alpha.iter().zip(v) {
        let rest = x - &a.scale_int(&n);
        match rest.as_integer() {
            Some(m) => witness.push(m),
            None => return Ok(undecided()),
        }
    }
    Ok(Membership::Member(witness))
}

#[derive(Clone, Debug)]
struct Iv {
    lo: BigRational,
    hi: BigRational,
}

impl Iv {
    fn point(q: BigRational) -> Self {
        Iv { lo: q.clone(), hi: q }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn mul(&self, o: &Iv) -> Iv {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Iv {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }

    fn mag(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }
}

fn enclose(x: &ExactNumber) -> Iv {
    let (lo, hi) = x.enclosure(64);
    Iv { lo, hi }
}

/// Branch-and-prune enumeration of integer `z` with `B z` in a box.
struct Enumerator<'a> {
    scheme: &'a Scheme,
    target: &'a ExactBox,
    entries: Vec<Vec<Iv>>,
    ylo: Vec<BigRational>,
    yhi: Vec<BigRational>,
    bounds: Vec<(BigInt, BigInt)>,
    /// `tails[j][r]`: enclosure of `Σ_{k>j} B_rk z_k` over the global bounds.
    tails: Vec<Vec<Iv>>,
}

impl<'a> Enumerator<'a> {
    fn new(scheme: &'a Scheme, target: &'a ExactBox) -> Result<Self> {
        let lat = &scheme.lattice;
        let dim = lat.rank();
        let entries: Vec<Vec<Iv>> = lat.basis.iter().map(|r| r.iter().map(enclose).collect()).collect();
        let ylo: Vec<BigRational> = target.lo.iter().map(|x| x.enclosure(64).0).collect();
        let yhi: Vec<BigRational> = target.hi.iter().map(|x| x.enclosure(64).1).collect();
        let bounds = global_bounds(lat, &entries, &ylo, &yhi)?;
        let mut tails = vec![vec![Iv::point(BigRational::zero()); dim]; dim];
        for j in (0..dim.saturating_sub(1)).rev() {
            let k = j + 1;
            let zk = Iv {
                lo: BigRational::from_integer(bounds[k].0.clone()),
                hi: BigRational::from_integer(bounds[k].1.clone()),
            };
            for r in 0..dim {
                tails[j][r] = tails[k][r].add(&entries[r][k].mul(&zk));
            }
        }
        Ok(Enumerator {
            scheme,
            target,
            entries,
            ylo,
            yhi,
            bounds,
            tails,
        })
    }

    fn run(&self, out: &mut Vec<LatticeVector>) -> Result<()> {
        let dim = self.entries.len();
        let fixed = vec![Iv::point(BigRational::zero()); dim];
        let mut z = Vec::with_capacity(dim);
        self.descend(0, &fixed, &mut z, out)
    }

    fn descend(&self, j: usize, fixed: &[Iv], z: &mut Vec<BigInt>, out: &mut Vec<LatticeVector>) -> Result<()> {
        let dim = self.entries.len();
        if j == dim {
            let lv = self.scheme.lattice_vector(z.clone());
            if self.target.contains(&lv.embedded)? {
                out.push(lv);
            }
            return Ok(());
        }
        let (mut lo, mut hi) = self.bounds[j].clone();
        for r in 0..dim {
            let rest = fixed[r].add(&self.tails[j][r]);
            // B_rj z_j ∈ [ylo - rest.hi, yhi - rest.lo]
            let t_lo = &self.ylo[r] - &rest.hi;
            let t_hi = &self.yhi[r] - &rest.lo;
            let b = &self.entries[r][j];
            if b.lo.is_zero() && b.hi.is_zero() {
                if t_lo > BigRational::zero() || t_hi < BigRational::zero() {
                    return Ok(());
                }
                continue;
            }
            if b.lo.is_positive() || b.hi.is_negative() {
                let q = [&t_lo / &b.lo, &t_lo / &b.hi, &t_hi / &b.lo, &t_hi / &b.hi];
                let qlo = q.iter().min().unwrap().ceil().to_integer();
                let qhi = q.iter().max().unwrap().floor().to_integer();
                lo = lo.max(qlo);
                hi = hi.min(qhi);
            }
        }
        let mut k = lo;
        while k <= hi {
            let kq = Iv::point(BigRational::from_integer(k.clone()));
            let next: Vec<Iv> = (0..dim)
                .map(|r| fixed[r].add(&self.entries[r][j].mul(&kq)))
                .collect();
            z.push(k.clone());
            self.descend(j + 1, &next, z, out)?;
            z.pop();
            k += 1;
        }
        Ok(())
    }
}

/// Integer box containing every `z` with `B z` in the target, from an
/// approximate inverse `M` and a rigorous bound on `I - M B`.
fn global_bounds(
    lat: &Lattice,
    entries: &[Vec<Iv>],
    ylo: &[BigRational],
    yhi: &[BigRational],
) -> Result<Vec<(BigInt, BigInt)>> {
    let dim = lat.rank();
    let approx: Vec<Vec<f64>> = lat
        .basis
        .iter()
        .map(|r| r.iter().map(ExactNumber::to_f64).collect())
        .collect();
    let inv = invert_f64(approx).ok_or(Error::IllConditioned)?;
    let m: Vec<Vec<BigRational>> = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_f64(x).ok_or(Error::IllConditioned))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // E = I - M B
    let mut rowsum = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut s = BigRational::zero();
        for j in 0..dim {
            let mut e = Iv::point(if i == j { BigRational::one() } else { BigRational::zero() });
            for k in 0..dim {
                let t = Iv::point(-&m[i][k]).mul(&entries[k][j]);
                e = e.add(&t);
            }
            s += e.mag();
        }
        rowsum.push(s);
    }
    let rho = rowsum.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let half = BigRational::new(1.into(), 2.into());
    if rho >= half {
        return Err(Error::IllConditioned);
    }
    let my: Vec<Iv> = (0..dim)
        .map(|i| {
            (0..dim).fold(Iv::point(BigRational::zero()), |acc, k| {
                acc.add(&Iv::point(m[i][k].clone()).mul(&Iv {
                    lo: ylo[k].clone(),
                    hi: yhi[k].clone(),
                }))
            })
        })
        .collect();
    let my_max = my.iter().map(Iv::mag).max().unwrap_or_else(BigRational::zero);
    let zmax = my_max / (BigRational::one() - rho);
    Ok((0..dim)
        .map(|i| {
            let slack = &rowsum[i] * &zmax;
            (
                (&my[i].lo - &slack).ceil().to_integer(),
                (&my[i].hi + &slack).floor().to_integer(),
            )
        })
        .collect())
}

fn invert_f64(mut a: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))?;
        if a[p][c].abs() < 1e-300 || !a[p][c].is_finite() {
            return None;
        }
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c];
        for j in 0..n {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0.0 {
                let f = a[r][c];
                for j in 0..n {
                    a[r][j] -= f * a[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    inv.iter().all(|r| r.iter().all(|x| x.is_finite())).then_some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{parse_expr, GeneratorContext, Sign};

    fn e(ctx: &Context, s: &str) -> ExactNumber {
        parse_expr(ctx, s).unwrap()
    }

    pub(crate) fn halffib() -> Scheme {
        let ctx = GeneratorContext::golden();
        let basis = vec![
            vec![e(&ctx, "1"), e(&ctx, "tau")],
            vec![e(&ctx, "1"), e(&ctx, "-1/tau")],
        ];
        Scheme::new(Lattice::new(&ctx, 1, basis).unwrap()).unwrap()
    }

    #[test]
    fn halffib_determinant() {
        let s = halffib();
        let ctx = s.context().clone();
        // 2x2 cofactor oracle: 1*(-1/tau) - tau*1
        let oracle = &e(&ctx, "-1/tau") - &e(&ctx, "tau");
        assert_eq!(s.lattice().det(), &oracle);
        // |det|^2 = 5
        let sq = s.lattice().det_abs().mul(s.lattice().det_abs()).unwrap();
        assert_eq!(sq, ExactNumber::from_i64(&ctx, 5));
        assert_eq!(s.lattice().det_abs().sign().unwrap(), Sign::Positive);
        assert_eq!(s.injectivity(), &Injectivity::Injective);
    }

    #[test]
    fn identity_and_singular() {
        let ctx = GeneratorContext::rational();
        let s = Scheme::trivial(&ctx, 1, 1).unwrap();
        assert_eq!(s.lattice().det_abs(), &ExactNumber::one(&ctx));
        assert_eq!(s.injectivity(), &Injectivity::NotInjective(vec![0.into(), 1.into()]));
        let one = ExactNumber::one(&ctx);
        let sing = vec![vec![one.clone(), one.clone()], vec![one.clone(), one]];
        assert!(matches!(Lattice::new(&ctx, 1, sing), Err(Error::SingularBasis)));
    }

    #[test]
    fn halffib_memberships() {
        let s = halffib();
        let ctx = s.context().clone();
        let two_t = e(&ctx, "1 + 1/tau");
        let m = s.member_p2(&[two_t.clone()]).unwrap();
        assert_eq!(m, Membership::Member(vec![1.into(), (-1).into()]));
        let lv = s.lattice_vector(m.witness().unwrap().to_vec());
        assert_eq!(lv.internal(), &[two_t]);
        assert_eq!(s.member_p2(&[e(&ctx, "3/2 + 3/2/tau")]).unwrap(), Membership::NotMember);
        assert_eq!(
            s.member_p2(&[ExactNumber::zero(&ctx)]).unwrap(),
            Membership::Member(vec![0.into(), 0.into()])
        );
    }

    #[test]
    fn hecke_scheme_golden() {
        let ctx = GeneratorContext::golden();
        let a = e(&ctx, "1/tau");
        let s = make_hecke_scheme(vec![a.clone()], vec![a.clone()]).unwrap();
        assert_eq!(s.lattice().det_abs(), &ExactNumber::one(&ctx));
        assert_eq!(s.lattice().column(0), vec![e(&ctx, "1 + 1/tau/tau"), a.clone()]);
        assert_eq!(s.lattice().column(1), vec![a.clone(), ExactNumber::one(&ctx)]);
        // generic solver confirms both generators are lattice points
        let generic = Scheme::new(s.lattice().clone()).unwrap();
        for (j, col) in s.lattice().columns().iter().enumerate() {
            let m = generic.member_p2(&col[1..]).unwrap();
            assert!(m.is_member(), "column {j}");
        }
        assert!(matches!(
            make_hecke_scheme(vec![ExactNumber::ratio(&ctx, 1, 2)], vec![a]),
            Err(Error::DependenceDetected(_))
        ));
    }

    #[test]
    fn hecke_closed_form_matches_generic() {
        let ctx = GeneratorContext::golden();
        let a = e(&ctx, "1/tau");
        let s = make_hecke_scheme(vec![a.clone()], vec![e(&ctx, "2 - tau/3")]).unwrap();
        let generic = Scheme::new(s.lattice().clone()).unwrap();
        for n in -4i64..=4 {
            for m in -3i64..=3 {
                for half in [false, true] {
                    let mut v = &a.scale_int(&n.into()) + &ExactNumber::from_i64(&ctx, m);
                    if half {
                        v = v.scale(&BigRational::new(1.into(), 2.into()));
                    }
                    let x = s.member_p2(&[v.clone()]).unwrap();
                    let y = generic.member_p2(&[v.clone()]).unwrap();
                    assert_eq!(x.is_member(), y.is_member(), "{v}");
                    if let Membership::Member(z) = x {
                        assert_eq!(s.lattice_vector(z).internal(), &[v]);
                    }
                }
            }
        }
    }

    fn interval_box(ctx: &Context, a: &str, b: &str) -> ExactBox {
        ExactBox::interval(e(ctx, a), e(ctx, b))
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let s = halffib();
        let ctx = s.context().clone();
        let phys = interval_box(&ctx, "0", "5");
        let int = interval_box(&ctx, "-1", "1");
        let got = s.enumerate_lattice(&phys, &int).unwrap();
        let mut brute = Vec::new();
        for z0 in -20i64..=20 {
            for z1 in -20i64..=20 {
                let lv = s.lattice_vector(vec![z0.into(), z1.into()]);
                if phys.contains(lv.physical()).unwrap() && int.contains(lv.internal()).unwrap() {
                    brute.push(lv.z.clone());
                }
            }
        }
        let got_z: Vec<_> = got.iter().map(|l| l.z.clone()).collect();
        assert_eq!(got_z, brute);
        assert!(!brute.is_empty());
    }

    #[test]
    fn enumeration_degenerate_boxes() {
        let s = halffib();
        let ctx = s.context().clone();
        let empty = interval_box(&ctx, "1", "0");
        assert!(s.enumerate_lattice(&interval_box(&ctx, "0", "5"), &empty).unwrap().is_empty());
        let point = interval_box(&ctx, "0", "0");
        let got = s.enumerate_lattice(&point, &point).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].z, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn enumeration_symmetric() {
        let s = halffib();
        let ctx = s.context().clone();
        let got = s
            .enumerate_lattice(&interval_box(&ctx, "-7", "7"), &interval_box(&ctx, "-1/2", "1/2"))
            .unwrap();
        let set: std::collections::HashSet<_> = got.iter().map(|l| l.z.clone()).collect();
        for z in &set {
            let neg: Vec<BigInt> = z.iter().map(|x| -x).collect();
            assert!(set.contains(&neg));
        }
    }
}
