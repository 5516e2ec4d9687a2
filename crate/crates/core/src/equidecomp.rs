//! Equidecompositions by translations from a group `G`: the greedy residual
//! partition for interval unions and shear decompositions of
//! parallelograms.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{sort_exact, ExactNumber};
use crate::hadwiger::{face_flags_1d, face_flags_2d, hadwiger_1d, hadwiger_2d, Flag1D};
use crate::scheme::{Membership, TranslationGroup, ZSpan};
use crate::vector::{self, Vector};
use crate::window::{HalfPlane, IntervalUnion, Parallelogram, Polygon};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Intervals(IntervalUnion),
    Polygon(Polygon),
}

impl Region {
    pub fn measure(&self) -> Result<ExactNumber> {
        match self {
            Region::Intervals(u) => Ok(u.measure()),
            Region::Polygon(p) => p.area(),
        }
    }

    pub fn translate(&self, t: &[ExactNumber]) -> Result<Region> {
        Ok(match self {
            Region::Intervals(u) => Region::Intervals(u.translate(&t[0])),
            Region::Polygon(p) => Region::Polygon(p.translate(t)?),
        })
    }

    fn describe(&self) -> String {
        match self {
            Region::Intervals(u) => u.to_string(),
            Region::Polygon(p) => {
                let vs: Vec<String> = p.vertices().iter().map(|v| vector::format(v)).collect();
                vs.join(" ")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub region: Region,
    pub shift: Vector,
    /// Coordinates of `shift` with respect to the group generators.
    pub witness: Vec<BigInt>,
}

/// Pieces of a source set with their translations. Pieces never merge, even
/// when they abut.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PieceList {
    pub pieces: Vec<Piece>,
}

impl PieceList {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pieces: Vec<serde_json::Value> = self
            .pieces
            .iter()
            .map(|p| {
                serde_json::json!({
                    "region": p.region.describe(),
                    "shift": p.shift.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "shift_float": p.shift.iter().map(ExactNumber::to_f64).collect::<Vec<_>>(),
                    "witness": p.witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "pieces": pieces })
    }
}

fn certify(g: &dyn TranslationGroup, v: &[ExactNumber]) -> Result<Vec<BigInt>> {
    match g.member(v)? {
        Membership::Member(z) => Ok(z),
        Membership::NotMember => Err(Error::NotInGroup(vector::format(v))),
        Membership::Unknown(r) => Err(Error::MembershipUnknown(r)),
    }
}

/// Runs `W_k = R_{k-1} ∩ (R'_{k-1} - s_k)`, `R_k = R_{k-1} \ W_k`,
/// `R'_k = R'_{k-1} \ (W_k + s_k)` over the given shifts and succeeds when
/// the residual `R` is empty. Pieces are returned by increasing position.
pub fn greedy_decompose_1d(
    w: &IntervalUnion,
    w2: &IntervalUnion,
    shifts: &[ExactNumber],
    g: &dyn TranslationGroup,
) -> Result<PieceList> {
    let (m1, m2) = (w.measure(), w2.measure());
    if m1 != m2 {
        return Err(Error::MeasureMismatch(m1.to_string(), m2.to_string()));
    }
    let mut rest = w.clone();
    let mut rest2 = w2.clone();
    let mut pieces = Vec::new();
    for s in shifts {
        if rest.is_empty() {
            break;
        }
        let witness = certify(g, std::slice::from_ref(s))?;
        let neg = -s;
        let wk = rest.intersect(&rest2.translate(&neg))?;
        if wk.is_empty() {
            continue;
        }
        rest = rest.subtract(&wk)?;
        rest2 = rest2.subtract(&wk.translate(s))?;
        pieces.push(Piece {
            region: Region::Intervals(wk),
            shift: vec![s.clone()],
            witness,
        });
    }
    if !rest.is_empty() {
        return Err(Error::ResidualNonzero(rest.to_string()));
    }
    let mut err = None;
    pieces.sort_by(|a, b| {
        let key = |p: &Piece| match &p.region {
            Region::Intervals(u) => u.intervals()[0].0.clone(),
            Region::Polygon(_) => unreachable!(),
        };
        key(a).try_cmp(&key(b)).unwrap_or_else(|e| {
            err.get_or_insert(e);
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(PieceList { pieces })
}

/// Endpoint differences `e' - e` (`e'` from `w2`, `e` from `w`) lying in
/// `G`, ordered by the max-norm of their witnesses, then lexicographically.
pub fn propose_shifts_1d(w: &IntervalUnion, w2: &IntervalUnion, g: &dyn TranslationGroup) -> Result<Vec<ExactNumber>> {
    let ends = |u: &IntervalUnion| -> Vec<ExactNumber> {
        u.left_endpoints().chain(u.right_endpoints()).cloned().collect()
    };
    let mut found: Vec<(Vec<BigInt>, ExactNumber)> = Vec::new();
    for b in ends(w2) {
        for a in ends(w) {
            let d = b.try_sub(&a)?;
            if found.iter().any(|(_, x)| *x == d) {
                continue;
            }
            match g.member(std::slice::from_ref(&d))? {
                Membership::Member(z) => found.push((z, d)),
                Membership::NotMember => {}
                Membership::Unknown(r) => return Err(Error::MembershipUnknown(r)),
            }
        }
    }
    found.sort_by(|(za, _), (zb, _)| {
        let norm = |z: &[BigInt]| z.iter().map(|x| x.magnitude().clone()).max().unwrap_or_default();
        norm(za).cmp(&norm(zb)).then_with(|| za.cmp(zb))
    });
    Ok(found.into_iter().map(|(_, d)| d).collect())
}

/// The affine functional `λ(x) = t1 - s t2` in spanning coordinates of `p`,
/// as `(normal, constant)` with `λ(x) = <normal, x> - constant`.
fn shear_functional(p: &Parallelogram, s: &ExactNumber) -> Result<(Vector, ExactNumber)> {
    let det = vector::cross(&p.v1, &p.v2)?;
    // t1 = cross(x - a, v2)/det ; t2 = cross(v1, x - a)/det
    let n1 = vec![p.v2[1].clone(), -&p.v2[0]];
    let n2 = vec![-&p.v1[1], p.v1[0].clone()];
    let normal: Vector = vector::sub(&n1, &vector::scale_by(&n2, s)?)?
        .iter()
        .map(|x| x.div(&det))
        .collect::<Result<_>>()?;
    let constant = vector::dot(&normal, &p.anchor)?;
    Ok((normal, constant))
}

/// Cuts `P(w1, w2)` into the strips `k ≤ t1 - s t2 < k + 1` and shifts the
/// `k`-th strip by `-k w1`; the images tile `P(w1, w2 + s w1)`.
pub fn shear_decompose_2d(p: &Parallelogram, s: &ExactNumber, g: &dyn TranslationGroup) -> Result<PieceList> {
    let w1_witness = certify(g, &p.v1)?;
    let (normal, constant) = shear_functional(p, s)?;
    let poly = p.to_polygon()?;
    let ctx = p.context().clone();
    let zero = ExactNumber::zero(&ctx);
    let one = ExactNumber::one(&ctx);
    let lo = zero.min(&-s)?.floor()?;
    let hi = one.max(&(&one - s))?.ceil()?;
    let mut pieces = Vec::new();
    let mut k = lo;
    while k < hi {
        let kk = ExactNumber::from_bigint(&ctx, &k);
        let lower = HalfPlane::new(normal.clone(), &kk + &constant, true)?;
        let upper = HalfPlane::new(vector::neg(&normal), -&(&(&kk + &one) + &constant), false)?;
        if let Some(a) = poly.clip(&lower)? {
            if let Some(piece) = a.clip(&upper)? {
                let neg_k = -&k;
                pieces.push(Piece {
                    region: Region::Polygon(piece),
                    shift: vector::scale_int(&p.v1, &neg_k),
                    witness: w1_witness.iter().map(|x| x * &neg_k).collect(),
                });
            }
        }
        k += 1;
    }
    Ok(PieceList { pieces })
}

/// The half-planes whose intersection is a convex polygon.
fn half_planes(p: &Polygon) -> Result<Vec<HalfPlane>> {
    (0..p.len())
        .map(|i| {
            let e = p.edge(i);
            let n = vec![-&e[1], e[0].clone()];
            let c = vector::dot(&n, &p.vertices()[i])?;
            HalfPlane::new(n, c, p.edge_closed()[i])
        })
        .collect()
}

fn intersect_polygons(a: &Polygon, b: &Polygon) -> Result<Option<Polygon>> {
    let mut cur = a.clone();
    for h in half_planes(b)? {
        match cur.clip(&h)? {
            Some(c) => cur = c,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// Composes `A → B` with `B → C` through the common refinement.
pub fn compose(first: &PieceList, second: &PieceList) -> Result<PieceList> {
    let mut pieces = Vec::new();
    for p in &first.pieces {
        for q in &second.pieces {
            let back = q.region.translate(&vector::neg(&p.shift))?;
            let region = match (&p.region, &back) {
                (Region::Intervals(a), Region::Intervals(b)) => {
                    let r = a.intersect(b)?;
                    if r.is_empty() {
                        continue;
                    }
                    Region::Intervals(r)
                }
                (Region::Polygon(a), Region::Polygon(b)) => match intersect_polygons(a, b)? {
                    Some(r) => Region::Polygon(r),
                    None => continue,
                },
                _ => return Err(Error::InvalidArgument("mixed piece dimensions".into())),
            };
            pieces.push(Piece {
                region,
                shift: vector::add(&p.shift, &q.shift)?,
                witness: p.witness.iter().zip(&q.witness).map(|(a, b)| a + b).collect(),
            });
        }
    }
    Ok(PieceList { pieces })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub disjoint: bool,
    pub covers_source: bool,
    pub covers_target: bool,
    pub shifts_in_group: bool,
    pub measure_preserved: bool,
    pub invariants_agree: bool,
    pub flags_checked: usize,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.disjoint
            && self.covers_source
            && self.covers_target
            && self.shifts_in_group
            && self.measure_preserved
            && self.invariants_agree
    }
}

fn shifts_ok(pl: &PieceList, g: &ZSpan, notes: &mut Vec<String>) -> Result<bool> {
    let mut ok = true;
    for (i, p) in pl.pieces.iter().enumerate() {
        let certified = matches!(g.member(&p.shift)?, Membership::Member(_));
        let witnessed = p.witness.len() == g.generators().len() && g.element(&p.witness) == p.shift;
        if !certified || !witnessed {
            notes.push(format!("piece {i}: shift {} not certified in G", vector::format(&p.shift)));
            ok = false;
        }
    }
    Ok(ok)
}

/// Re-checks every clause of a `G`-equidecomposition of `w` onto `w2`.
pub fn verify_1d(pl: &PieceList, w: &IntervalUnion, w2: &IntervalUnion, g: &ZSpan) -> Result<VerifyReport> {
    let ctx = w.context();
    let mut notes = Vec::new();
    let mut parts = Vec::new();
    for p in &pl.pieces {
        match &p.region {
            Region::Intervals(u) => parts.push((u, &p.shift[0])),
            Region::Polygon(_) => return Err(Error::InvalidArgument("polygon piece in 1D verify".into())),
        }
    }
    let mut disjoint = true;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !parts[i].0.intersect(parts[j].0)?.is_empty() {
                notes.push(format!("pieces {i} and {j} overlap"));
                disjoint = false;
            }
        }
    }
    let mut src = IntervalUnion::empty(ctx);
    let mut dst = IntervalUnion::empty(ctx);
    let mut total = ExactNumber::zero(ctx);
    for (u, s) in &parts {
        src = src.union(u)?;
        dst = dst.union(&u.translate(s))?;
        total = &total + &u.measure();
    }
    let covers_source = src == *w;
    let covers_target = dst == *w2;
    if !covers_source {
        notes.push(format!("pieces cover {src}, source is {w}"));
    }
    if !covers_target {
        notes.push(format!("shifted pieces cover {dst}, target is {w2}"));
    }
    let measure_preserved = total == w.measure() && total == w2.measure();
    let shifts_in_group = shifts_ok(pl, g, &mut notes)?;
    let flags: Vec<Flag1D> = face_flags_1d(&[w, w2])?;
    let mut invariants_agree = true;
    for f in &flags {
        let a = hadwiger_1d(w, f, g)?.value;
        let b = hadwiger_1d(w2, f, g)?.value;
        if a != b {
            notes.push(format!("invariant at {} differs: {a} vs {b}", f.point));
            invariants_agree = false;
        }
    }
    Ok(VerifyReport {
        disjoint,
        covers_source,
        covers_target,
        shifts_in_group,
        measure_preserved,
        invariants_agree,
        flags_checked: flags.len(),
        notes,
    })
}

fn closed_hull(p: &Polygon) -> Result<Polygon> {
    Polygon::closed(p.vertices().to_vec())
}

/// Measure-level coverage plus point-level checks at vertices and edge
/// midpoints of all pieces and of the covered set.
fn covers_2d(regions: &[Polygon], whole: &Polygon, notes: &mut Vec<String>, label: &str) -> Result<bool> {
    let hull = closed_hull(whole)?;
    let mut ok = true;
    let mut area = ExactNumber::zero(whole.context());
    for (i, r) in regions.iter().enumerate() {
        area = area.try_add(&r.area()?)?;
        for v in r.vertices() {
            if !hull.contains(v)? {
                notes.push(format!("{label}: piece {i} leaves the set at {}", vector::format(v)));
                ok = false;
            }
        }
    }
    if area != whole.area()? {
        notes.push(format!("{label}: piece areas sum to {area}, set area is {}", whole.area()?));
        ok = false;
    }
    let mut probes = whole.probe_points()?;
    for r in regions {
        probes.extend(r.probe_points()?);
    }
    for x in probes {
        let inside = whole.contains(&x)?;
        let mut count = 0;
        for r in regions {
            if r.contains(&x)? {
                count += 1;
            }
        }
        if count != inside as usize {
            notes.push(format!(
                "{label}: point {} lies in {count} pieces, in set: {inside}",
                vector::format(&x)
            ));
            ok = false;
        }
    }
    Ok(ok)
}

pub fn verify_2d(pl: &PieceList, w: &Polygon, w2: &Polygon, g: &ZSpan) -> Result<VerifyReport> {
    let mut notes = Vec::new();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for p in &pl.pieces {
        match &p.region {
            Region::Polygon(q) => {
                dst.push(q.translate(&p.shift)?);
                src.push(q.clone());
            }
            Region::Intervals(_) => return Err(Error::InvalidArgument("interval piece in 2D verify".into())),
        }
    }
    let mut disjoint = true;
    for i in 0..src.len() {
        for j in i + 1..src.len() {
            if intersect_polygons(&src[i], &src[j])?.is_some() {
                notes.push(format!("pieces {i} and {j} overlap with positive area"));
                disjoint = false;
            }
        }
    }
    let covers_source = covers_2d(&src, w, &mut notes, "source")?;
    let covers_target = covers_2d(&dst, w2, &mut notes, "target")?;
    let total = src
        .iter()
        .try_fold(ExactNumber::zero(w.context()), |acc, p| acc.try_add(&p.area()?))?;
    let measure_preserved = total == w.area()? && total == w2.area()?;
    let shifts_in_group = shifts_ok(pl, g, &mut notes)?;
    let flags = face_flags_2d(&[w, w2])?;
    let mut invariants_agree = true;
    for f in &flags {
        let a = hadwiger_2d(w, f, g)?.value;
        let b = hadwiger_2d(w2, f, g)?.value;
        if a != b {
            notes.push(format!("invariant for flag {f} differs: {a} vs {b}"));
            invariants_agree = false;
        }
    }
    Ok(VerifyReport {
        disjoint,
        covers_source,
        covers_target,
        shifts_in_group,
        measure_preserved,
        invariants_agree,
        flags_checked: flags.len(),
        notes,
    })
}

/// Sum of the piece measures.
pub fn total_measure(pl: &PieceList) -> Result<Option<ExactNumber>> {
    let mut acc: Option<ExactNumber> = None;
    for p in &pl.pieces {
        let m = p.region.measure()?;
        acc = Some(match acc {
            Some(a) => a.try_add(&m)?,
            None => m,
        });
    }
    Ok(acc)
}

/// Whether every shift is an integer multiple of `w`.
pub fn shifts_are_multiples(pl: &PieceList, w: &[ExactNumber]) -> Result<bool> {
    for p in &pl.pieces {
        let mut factor: Option<ExactNumber> = None;
        for (s, x) in p.shift.iter().zip(w) {
            if x.is_zero() {
                if !s.is_zero() {
                    return Ok(false);
                }
                continue;
            }
            let q = s.div(x)?;
            match &factor {
                Some(f) if *f != q => return Ok(false),
                _ => factor = Some(q),
            }
        }
        if let Some(f) = factor {
            if f.as_integer().is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sorts exact numbers ascending; shared by callers that present shifts.
pub fn sorted(mut xs: Vec<ExactNumber>) -> Result<Vec<ExactNumber>> {
    sort_exact(&mut xs, |x| x)?;
    Ok(xs)
}
