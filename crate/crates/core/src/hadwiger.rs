//! Flags, weight functions and Hadwiger invariants relative to a
//! translation group `G`, for interval unions (rank 0) and convex polygons
//! (ranks 0 and 1).

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{sort_exact, Context, ExactNumber, Sign};
use crate::scheme::{Membership, TranslationGroup, ZSpan};
use crate::vector::{self, Vector};
use crate::window::{IntervalUnion, Polygon};

/// A point of `R` with a chosen positive side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag1D {
    pub point: ExactNumber,
    pub positive_right: bool,
}

impl Flag1D {
    pub fn new(point: ExactNumber) -> Self {
        Flag1D {
            point,
            positive_right: true,
        }
    }

    pub fn translate(&self, g: &ExactNumber) -> Self {
        Flag1D {
            point: &self.point + g,
            positive_right: self.positive_right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub face: String,
    pub sign: i32,
    #[serde(serialize_with = "crate::report::exact")]
    pub amount: ExactNumber,
    #[serde(serialize_with = "crate::report::integers")]
    pub witness: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantValue {
    #[serde(serialize_with = "crate::report::exact")]
    pub value: ExactNumber,
    pub contributions: Vec<Contribution>,
}

fn require_member(m: Membership, what: &dyn Fn() -> String) -> Result<Option<Vec<BigInt>>> {
    match m {
        Membership::Member(z) => Ok(Some(z)),
        Membership::NotMember => Ok(None),
        Membership::Unknown(_) => Err(Error::MembershipUnknown(what())),
    }
}

/// `+1` per left endpoint at the flag point, `-1` per right endpoint,
/// negated when the positive side is the left.
pub fn weight_1d(s: &IntervalUnion, f: &Flag1D) -> i64 {
    let left = s.left_endpoints().filter(|a| **a == f.point).count() as i64;
    let right = s.right_endpoints().filter(|b| **b == f.point).count() as i64;
    let w = left - right;
    if f.positive_right {
        w
    } else {
        -w
    }
}

/// Sum of the weights of all flags `f + g`, `g ∈ G`.
pub fn hadwiger_1d(s: &IntervalUnion, f: &Flag1D, g: &dyn TranslationGroup) -> Result<InvariantValue> {
    let ctx = s.context();
    let orient = if f.positive_right { 1 } else { -1 };
    let mut value = 0i64;
    let mut contributions = Vec::new();
    let ends = s
        .left_endpoints()
        .map(|a| (a, 1))
        .chain(s.right_endpoints().map(|b| (b, -1)));
    for (x, sign) in ends {
        let diff = x.try_sub(&f.point)?;
        let m = g.member(std::slice::from_ref(&diff))?;
        if let Some(w) = require_member(m, &|| diff.to_string())? {
            let sign = sign * orient;
            value += sign;
            contributions.push(Contribution {
                face: x.to_string(),
                sign: sign as i32,
                amount: ExactNumber::one(ctx),
                witness: w,
            });
        }
    }
    Ok(InvariantValue {
        value: ExactNumber::from_i64(ctx, value),
        contributions,
    })
}

/// Orbit classes `p + G` carrying a nonzero rank-0 invariant, with one
/// endpoint as representative; at most `2N` classes for `N` intervals.
pub fn nonzero_classes_1d(s: &IntervalUnion, g: &dyn TranslationGroup) -> Result<Vec<(ExactNumber, i64)>> {
    let mut classes: Vec<(ExactNumber, i64)> = Vec::new();
    let ends = s
        .left_endpoints()
        .map(|a| (a, 1))
        .chain(s.right_endpoints().map(|b| (b, -1)));
    'next: for (x, sign) in ends {
        for (rep, total) in classes.iter_mut() {
            let diff = x.try_sub(rep)?;
            let m = g.member(std::slice::from_ref(&diff))?;
            if require_member(m, &|| diff.to_string())?.is_some() {
                *total += sign;
                continue 'next;
            }
        }
        classes.push((x.clone(), sign));
    }
    classes.retain(|(_, v)| *v != 0);
    Ok(classes)
}

/// Flags through the endpoints of the given sets.
pub fn face_flags_1d(sets: &[&IntervalUnion]) -> Result<Vec<Flag1D>> {
    let mut pts: Vec<ExactNumber> = sets
        .iter()
        .flat_map(|s| s.left_endpoints().chain(s.right_endpoints()).cloned())
        .collect();
    sort_exact(&mut pts, |x| x)?;
    pts.dedup();
    Ok(pts.into_iter().map(Flag1D::new).collect())
}

/// A rank-1 flag (a line with a positive side) or a rank-0 flag (a point on
/// such a line with a positive half-line).
///
/// The line is `<normal, x> = offset` with the first nonzero component of
/// `normal` equal to 1, so equal lines have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag2D {
    normal: Vector,
    offset: ExactNumber,
    positive: bool,
    point: Option<(Vector, bool)>,
}

impl Flag2D {
    /// The line `<normal, x> = offset` whose positive side is the one the
    /// given normal points into.
    pub fn line(normal: Vector, offset: ExactNumber) -> Result<Self> {
        if normal.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: normal.len(),
            });
        }
        let k = if !normal[0].is_zero() {
            normal[0].clone()
        } else if !normal[1].is_zero() {
            normal[1].clone()
        } else {
            return Err(Error::InvalidArgument("flag normal is zero".into()));
        };
        let positive = k.sign()? == Sign::Positive;
        let normal = normal.iter().map(|x| x.div(&k)).collect::<Result<Vec<_>>>()?;
        let offset = offset.div(&k)?;
        Ok(Flag2D {
            normal,
            offset,
            positive,
            point: None,
        })
    }

    /// The line through `a` and `b`, positive on the left of `a → b`.
    pub fn through(a: &[ExactNumber], b: &[ExactNumber]) -> Result<Self> {
        let e = vector::sub(b, a)?;
        let n = vec![-&e[1], e[0].clone()];
        let c = vector::dot(&n, a)?;
        Self::line(n, c)
    }

    /// Rank-0 refinement: a point on the line; `forward` selects the
    /// half-line along [`Flag2D::direction`] as positive.
    pub fn with_point(&self, p: Vector, forward: bool) -> Result<Self> {
        if !self.on_line(&p)? {
            return Err(Error::InvalidArgument(format!(
                "flag point {} is not on the line",
                vector::format(&p)
            )));
        }
        Ok(Flag2D {
            point: Some((p, forward)),
            ..self.clone()
        })
    }

    pub fn rank(&self) -> usize {
        if self.point.is_some() {
            0
        } else {
            1
        }
    }

    pub fn normal(&self) -> &[ExactNumber] {
        &self.normal
    }

    pub fn offset(&self) -> &ExactNumber {
        &self.offset
    }

    pub fn point(&self) -> Option<&[ExactNumber]> {
        self.point.as_ref().map(|(p, _)| p.as_slice())
    }

    /// Canonical direction of the line, `(-n_y, n_x)`.
    pub fn direction(&self) -> Vector {
        vec![-&self.normal[1], self.normal[0].clone()]
    }

    pub fn flip(&self) -> Self {
        Flag2D {
            positive: !self.positive,
            ..self.clone()
        }
    }

    pub fn translate(&self, g: &[ExactNumber]) -> Result<Self> {
        let shift = vector::dot(&self.normal, g)?;
        Ok(Flag2D {
            normal: self.normal.clone(),
            offset: self.offset.try_add(&shift)?,
            positive: self.positive,
            point: match &self.point {
                Some((p, fw)) => Some((vector::add(p, g)?, *fw)),
                None => None,
            },
        })
    }

    fn on_line(&self, x: &[ExactNumber]) -> Result<bool> {
        Ok(vector::dot(&self.normal, x)?.try_sub(&self.offset)?.is_zero())
    }

    fn describe(&self) -> String {
        let side = if self.positive { ">" } else { "<" };
        let mut s = format!(
            "<{}, x> = {} (positive {side})",
            vector::format(&self.normal),
            self.offset
        );
        if let Some((p, fw)) = &self.point {
            s.push_str(&format!(" at {} {}", vector::format(p), if *fw { "forward" } else { "backward" }));
        }
        s
    }
}

impl std::fmt::Display for Flag2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Data of an edge lying on a line parallel to the flag.
struct ParallelEdge {
    index: usize,
    /// `ε1`: +1 when the polygon adjoins the line from the positive side.
    eps1: i32,
    /// Signed length `λ` with `edge = λ · direction`.
    lambda: ExactNumber,
    offset: ExactNumber,
}

fn parallel_edges(s: &Polygon, f: &Flag2D) -> Result<Vec<ParallelEdge>> {
    let d = f.direction();
    let dd = vector::dot(&d, &d)?;
    let mut out = Vec::new();
    for i in 0..s.len() {
        let e = s.edge(i);
        if !vector::dot(&f.normal, &e)?.is_zero() {
            continue;
        }
        let left = vec![-&e[1], e[0].clone()];
        let side = vector::dot(&f.normal, &left)?.sign()?;
        let mut eps1 = if side == Sign::Positive { 1 } else { -1 };
        if !f.positive {
            eps1 = -eps1;
        }
        let lambda = vector::dot(&e, &d)?.div(&dd)?;
        let offset = vector::dot(&f.normal, &s.vertices()[i])?;
        out.push(ParallelEdge {
            index: i,
            eps1,
            lambda,
            offset,
        });
    }
    Ok(out)
}

/// `ω_Φ(S)`: rank 1 sums `ε1 · length` over edges on the flag line, with
/// length measured in units of [`Flag2D::direction`]; rank 0 sums `ε0 ε1`
/// over edges on the line having the flag point as an endpoint.
pub fn weight_2d(s: &Polygon, f: &Flag2D) -> Result<ExactNumber> {
    let ctx = s.context().clone();
    let mut total = ExactNumber::zero(&ctx);
    for pe in parallel_edges(s, f)? {
        if pe.offset != f.offset {
            continue;
        }
        match &f.point {
            None => {
                let len = pe.lambda.abs()?;
                total = if pe.eps1 > 0 { &total + &len } else { &total - &len };
            }
            Some((p, fw)) => {
                for (v, eps0) in edge_ends(s, pe.index, &pe.lambda, *fw)? {
                    if v.as_slice() == p.as_slice() {
                        total = &total + &ExactNumber::from_i64(&ctx, (eps0 * pe.eps1) as i64);
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Endpoints of edge `i` with `ε0`: +1 when the edge leaves the endpoint
/// along the positive half-line.
fn edge_ends(s: &Polygon, i: usize, lambda: &ExactNumber, forward: bool) -> Result<[(Vector, i32); 2]> {
    let k = s.len();
    let up = (lambda.sign()? == Sign::Positive) == forward;
    let (a, b) = (s.vertices()[i].clone(), s.vertices()[(i + 1) % k].clone());
    Ok(if up { [(a, 1), (b, -1)] } else { [(a, -1), (b, 1)] })
}

/// `H_Φ(S, G)`: the sum of `ω_Ψ(S)` over the distinct flags `Ψ = Φ + g`.
pub fn hadwiger_2d(s: &Polygon, f: &Flag2D, g: &ZSpan) -> Result<InvariantValue> {
    let ctx = s.context().clone();
    let mut value = ExactNumber::zero(&ctx);
    let mut contributions = Vec::new();
    let edges = parallel_edges(s, f)?;
    match &f.point {
        None => {
            // edge on l + g  <=>  offset_e - offset ∈ <n, G>
            let projected = g.project(&f.normal)?;
            for pe in edges {
                let diff = pe.offset.try_sub(&f.offset)?;
                let m = projected.member(std::slice::from_ref(&diff))?;
                if let Some(w) = require_member(m, &|| diff.to_string())? {
                    let len = pe.lambda.abs()?;
                    value = if pe.eps1 > 0 { &value + &len } else { &value - &len };
                    contributions.push(Contribution {
                        face: format!("edge {}", pe.index),
                        sign: pe.eps1,
                        amount: len,
                        witness: w,
                    });
                }
            }
        }
        Some((p, fw)) => {
            for pe in edges {
                for (v, eps0) in edge_ends(s, pe.index, &pe.lambda, *fw)? {
                    let diff = vector::sub(&v, p)?;
                    let m = g.member(&diff)?;
                    if let Some(w) = require_member(m, &|| vector::format(&diff))? {
                        let sign = eps0 * pe.eps1;
                        value = &value + &ExactNumber::from_i64(&ctx, sign as i64);
                        contributions.push(Contribution {
                            face: format!("vertex {} of edge {}", vector::format(&v), pe.index),
                            sign,
                            amount: ExactNumber::one(&ctx),
                            witness: w,
                        });
                    }
                }
            }
        }
    }
    Ok(InvariantValue { value, contributions })
}

/// Rank-1 and rank-0 flags through every edge and vertex of the polygons.
pub fn face_flags_2d(polys: &[&Polygon]) -> Result<Vec<Flag2D>> {
    let mut out: Vec<Flag2D> = Vec::new();
    for p in polys {
        let k = p.len();
        for i in 0..k {
            let a = &p.vertices()[i];
            let b = &p.vertices()[(i + 1) % k];
            let line = Flag2D::through(a, b)?;
            for f in [line.clone(), line.with_point(a.clone(), true)?, line.with_point(b.clone(), true)?] {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
    }
    Ok(out)
}

/// A flag on `ctx` from small rational data, used for randomized checks.
pub fn rational_flag(ctx: &Context, a: i64, b: i64, c: i64) -> Result<Flag2D> {
    Flag2D::line(
        vec![ExactNumber::from_i64(ctx, a), ExactNumber::from_i64(ctx, b)],
        ExactNumber::from_i64(ctx, c),
    )
}
