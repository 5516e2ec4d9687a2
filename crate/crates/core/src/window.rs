//! Windows: half-open interval unions in `R` and half-open convex polygons
//! in `R^2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{sort_exact, Context, ExactNumber, Sign};
use crate::scheme::ExactBox;
use crate::vector::{self, Vector};

/// A finite union of half-open intervals `[a, b)`, kept sorted, disjoint
/// and with abutting intervals merged.
#[derive(Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    ctx: Context,
    intervals: Vec<(ExactNumber, ExactNumber)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Intersect,
    Subtract,
    Union,
}

impl IntervalUnion {
    pub fn empty(ctx: &Context) -> Self {
        IntervalUnion {
            ctx: ctx.clone(),
            intervals: Vec::new(),
        }
    }

    /// Union of the given intervals; each must satisfy `a < b`.
    pub fn new(ctx: &Context, intervals: Vec<(ExactNumber, ExactNumber)>) -> Result<Self> {
        for (a, b) in &intervals {
            if a.context() != ctx || b.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if !a.lt(b)? {
                return Err(Error::InvalidWindow(format!("[{a}, {b}) is empty or reversed")));
            }
        }
        let mut sorted = intervals;
        sort_exact(&mut sorted, |p| &p.0)?;
        let mut out: Vec<(ExactNumber, ExactNumber)> = Vec::with_capacity(sorted.len());
        for (a, b) in sorted {
            if let Some(last) = out.last_mut() {
                if a.le(&last.1)? {
                    if last.1.lt(&b)? {
                        last.1 = b;
                    }
                    continue;
                }
            }
            out.push((a, b));
        }
        Ok(IntervalUnion {
            ctx: ctx.clone(),
            intervals: out,
        })
    }

    pub fn interval(a: ExactNumber, b: ExactNumber) -> Result<Self> {
        let ctx = a.context().clone();
        Self::new(&ctx, vec![(a, b)])
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn intervals(&self) -> &[(ExactNumber, ExactNumber)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> ExactNumber {
        self.intervals
            .iter()
            .fold(ExactNumber::zero(&self.ctx), |acc, (a, b)| &acc + &(b - a))
    }

    pub fn translate(&self, t: &ExactNumber) -> Self {
        IntervalUnion {
            ctx: self.ctx.clone(),
            intervals: self
                .intervals
                .iter()
                .map(|(a, b)| (a + t, b + t))
                .collect(),
        }
    }

    pub fn contains(&self, x: &ExactNumber) -> Result<bool> {
        for (a, b) in &self.intervals {
            if a.le(x)? && x.lt(b)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn left_endpoints(&self) -> impl Iterator<Item = &ExactNumber> {
        self.intervals.iter().map(|(a, _)| a)
    }

    pub fn right_endpoints(&self) -> impl Iterator<Item = &ExactNumber> {
        self.intervals.iter().map(|(_, b)| b)
    }

    /// `(inf, sup)` of a nonempty union.
    pub fn bounds(&self) -> Option<(ExactNumber, ExactNumber)> {
        Some((
            self.intervals.first()?.0.clone(),
            self.intervals.last()?.1.clone(),
        ))
    }

    pub fn boolean(&self, other: &Self, op: BoolOp) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut points: Vec<ExactNumber> = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        sort_exact(&mut points, |x| x)?;
        points.dedup();
        let mut pieces = Vec::new();
        for w in points.windows(2) {
            // membership is constant on each elementary segment [w0, w1)
            let x = self.contains(&w[0])?;
            let y = other.contains(&w[0])?;
            let keep = match op {
                BoolOp::Intersect => x && y,
                BoolOp::Subtract => x && !y,
                BoolOp::Union => x || y,
            };
            if keep {
                pieces.push((w[0].clone(), w[1].clone()));
            }
        }
        Self::new(&self.ctx, pieces)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.boolean(other, BoolOp::Intersect)
    }

    pub fn subtract(&self, other: &Self) -> Result<Self> {
        self.boolean(other, BoolOp::Subtract)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.boolean(other, BoolOp::Union)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.subtract(other)?.is_empty())
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(a, b)| format!("[{a}, {b})"))
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalUnion({self})")
    }
}

/// The closed or open half-plane `{x : <normal, x> ≥ offset}` (resp. `>`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub normal: Vector,
    pub offset: ExactNumber,
    pub closed: bool,
}

impl HalfPlane {
    pub fn new(normal: Vector, offset: ExactNumber, closed: bool) -> Result<Self> {
        if normal.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: normal.len(),
            });
        }
        if vector::is_zero(&normal) {
            return Err(Error::InvalidArgument("half-plane normal is zero".into()));
        }
        Ok(HalfPlane {
            normal,
            offset,
            closed,
        })
    }

    /// Signed value `<normal, x> - offset`.
    pub fn eval(&self, x: &[ExactNumber]) -> Result<ExactNumber> {
        vector::dot(&self.normal, x)?.try_sub(&self.offset)
    }

    pub fn contains(&self, x: &[ExactNumber]) -> Result<bool> {
        Ok(match self.eval(x)?.sign()? {
            Sign::Positive => true,
            Sign::Zero => self.closed,
            Sign::Negative => false,
        })
    }

    /// The complementary half-plane.
    pub fn complement(&self) -> Self {
        HalfPlane {
            normal: vector::neg(&self.normal),
            offset: -&self.offset,
            closed: !self.closed,
        }
    }
}

/// A convex polygon with counter-clockwise vertices. Edge `i` runs from
/// vertex `i` to vertex `i+1`; each edge and each vertex carries a flag
/// saying whether it belongs to the set.
#[derive(Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Vector>,
    edge_closed: Vec<bool>,
    vertex_closed: Vec<bool>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vector>, edge_closed: Vec<bool>, vertex_closed: Vec<bool>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 {
            return Err(Error::InvalidWindow("polygon needs at least 3 vertices".into()));
        }
        if edge_closed.len() != k || vertex_closed.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: edge_closed.len().min(vertex_closed.len()),
            });
        }
        if vertices.iter().any(|v| v.len() != 2) {
            return Err(Error::InvalidWindow("polygon vertices must be 2-vectors".into()));
        }
        let p = Polygon {
            vertices,
            edge_closed,
            vertex_closed,
        };
        for i in 0..k {
            if p.vertices[i] == p.vertices[(i + 1) % k] {
                return Err(Error::InvalidWindow("repeated polygon vertex".into()));
            }
            let c = vector::cross(&p.edge(i), &p.edge((i + 1) % k))?;
            if c.sign()? == Sign::Negative {
                return Err(Error::InvalidWindow(
                    "polygon must be convex with counter-clockwise orientation".into(),
                ));
            }
        }
        if p.area()?.sign()? != Sign::Positive {
            return Err(Error::InvalidWindow("polygon has zero area".into()));
        }
        Ok(p)
    }

    /// Polygon whose vertices are closed exactly when both incident edges
    /// are.
    pub fn with_edge_flags(vertices: Vec<Vector>, edge_closed: Vec<bool>) -> Result<Self> {
        let k = edge_closed.len();
        let vertex_closed = (0..k)
            .map(|i| edge_closed[i] && edge_closed[(i + k - 1) % k])
            .collect();
        Self::new(vertices, edge_closed, vertex_closed)
    }

    /// All boundary points included.
    pub fn closed(vertices: Vec<Vector>) -> Result<Self> {
        let k = vertices.len();
        Self::new(vertices, vec![true; k], vec![true; k])
    }

    pub fn context(&self) -> &Context {
        self.vertices[0][0].context()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn edge_closed(&self) -> &[bool] {
        &self.edge_closed
    }

    pub fn vertex_closed(&self) -> &[bool] {
        &self.vertex_closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge vector `v_{i+1} - v_i`.
    pub fn edge(&self, i: usize) -> Vector {
        let k = self.vertices.len();
        vector::sub(&self.vertices[(i + 1) % k], &self.vertices[i]).expect("2-vectors")
    }

    pub fn area(&self) -> Result<ExactNumber> {
        let k = self.vertices.len();
        let ctx = self.context().clone();
        let mut twice = ExactNumber::zero(&ctx);
        for i in 0..k {
            twice = twice.try_add(&vector::cross(&self.vertices[i], &self.vertices[(i + 1) % k])?)?;
        }
        Ok(twice.scale(&num_rational::BigRational::new(1.into(), 2.into())))
    }

    pub fn translate(&self, t: &[ExactNumber]) -> Result<Self> {
        Ok(Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| vector::add(v, t))
                .collect::<Result<_>>()?,
            edge_closed: self.edge_closed.clone(),
            vertex_closed: self.vertex_closed.clone(),
        })
    }

    pub fn contains(&self, x: &[ExactNumber]) -> Result<bool> {
        let k = self.vertices.len();
        let mut on_edges = Vec::new();
        for i in 0..k {
            let rel = vector::sub(x, &self.vertices[i])?;
            match vector::cross(&self.edge(i), &rel)?.sign()? {
                Sign::Negative => return Ok(false),
                Sign::Zero => on_edges.push(i),
                Sign::Positive => {}
            }
        }
        if let Some(i) = self.vertices.iter().position(|v| v.as_slice() == x) {
            return Ok(self.vertex_closed[i]);
        }
        for i in on_edges {
            // x lies on the line of edge i; it is on the edge itself when it
            // falls strictly between the endpoints
            let e = self.edge(i);
            let rel = vector::sub(x, &self.vertices[i])?;
            let t = vector::dot(&e, &rel)?;
            let len2 = vector::dot(&e, &e)?;
            if t.sign()? == Sign::Positive && t.lt(&len2)? {
                return Ok(self.edge_closed[i]);
            }
        }
        Ok(true)
    }

    pub fn bounding_box(&self) -> Result<ExactBox> {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for d in 0..2 {
                lo[d] = lo[d].min(&v[d])?;
                hi[d] = hi[d].max(&v[d])?;
            }
        }
        ExactBox::new(lo, hi)
    }

    /// `self ∩ h`, or `None` when the intersection has zero area.
    pub fn clip(&self, h: &HalfPlane) -> Result<Option<Polygon>> {
        let k = self.vertices.len();
        let vals: Vec<ExactNumber> = self
            .vertices
            .iter()
            .map(|v| h.eval(v))
            .collect::<Result<_>>()?;
        let signs: Vec<Sign> = vals.iter().map(ExactNumber::sign).collect::<Result<_>>()?;
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        let mut vflags = Vec::new();
        for i in 0..k {
            let j = (i + 1) % k;
            let (sp, sq) = (signs[i], signs[j]);
            let f = self.edge_closed[i];
            if sp != Sign::Negative {
                verts.push(self.vertices[i].clone());
                vflags.push(self.vertex_closed[i] && (sp == Sign::Positive || h.closed));
                edges.push(match (sp, sq) {
                    (Sign::Zero, Sign::Zero) => f && h.closed,
                    (Sign::Zero, Sign::Negative) => h.closed,
                    (Sign::Positive, Sign::Negative) => f,
                    _ => f,
                });
            }
            let crossing = matches!(
                (sp, sq),
                (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive)
            );
            if crossing {
                // x = P + (dp / (dp - dq)) (Q - P)
                let r = vals[i].div(&(&vals[i] - &vals[j]))?;
                let pt = vector::add(&self.vertices[i], &vector::scale_by(&self.edge(i), &r)?)?;
                verts.push(pt);
                vflags.push(f && h.closed);
                edges.push(if sp == Sign::Positive { h.closed } else { f });
            }
        }
        if verts.len() < 3 {
            return Ok(None);
        }
        let p = Polygon {
            vertices: verts,
            edge_closed: edges,
            vertex_closed: vflags,
        };
        if p.area()?.sign()? != Sign::Positive {
            return Ok(None);
        }
        Ok(Some(p))
    }

    /// Points of the boundary worth testing at point level: vertices and
    /// edge midpoints.
    pub fn probe_points(&self) -> Result<Vec<Vector>> {
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let k = self.vertices.len();
        let mut out = self.vertices.clone();
        for i in 0..k {
            let mid = vector::add(&self.vertices[i], &vector::scale(&self.edge(i), &half))?;
            out.push(mid);
        }
        Ok(out)
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| vector::format(v)).collect();
        write!(
            f,
            "Polygon[{}; edges {:?}; vertices {:?}]",
            parts.join(", "),
            self.edge_closed,
            self.vertex_closed
        )
    }
}

/// `{anchor + t1 v1 + t2 v2 : 0 ≤ t1, t2 < 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelogram {
    pub anchor: Vector,
    pub v1: Vector,
    pub v2: Vector,
}

impl Parallelogram {
    pub fn new(anchor: Vector, v1: Vector, v2: Vector) -> Result<Self> {
        if anchor.len() != 2 || v1.len() != 2 || v2.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: anchor.len().max(v1.len()).max(v2.len()),
            });
        }
        if vector::cross(&v1, &v2)?.is_zero() {
            return Err(Error::InvalidWindow("spanning vectors are parallel".into()));
        }
        Ok(Parallelogram { anchor, v1, v2 })
    }

    pub fn at_origin(v1: Vector, v2: Vector) -> Result<Self> {
        let ctx = v1[0].context().clone();
        Self::new(vector::zeros(&ctx, 2), v1, v2)
    }

    pub fn context(&self) -> &Context {
        self.anchor[0].context()
    }

    pub fn measure(&self) -> Result<ExactNumber> {
        vector::cross(&self.v1, &self.v2)?.abs()
    }

    pub fn translate(&self, t: &[ExactNumber]) -> Result<Self> {
        Ok(Parallelogram {
            anchor: vector::add(&self.anchor, t)?,
            v1: self.v1.clone(),
            v2: self.v2.clone(),
        })
    }

    /// Spanning coordinates `(t1, t2)` of `x`.
    pub fn coordinates(&self, x: &[ExactNumber]) -> Result<(ExactNumber, ExactNumber)> {
        let rel = vector::sub(x, &self.anchor)?;
        let det = vector::cross(&self.v1, &self.v2)?;
        let t1 = vector::cross(&rel, &self.v2)?.div(&det)?;
        let t2 = vector::cross(&self.v1, &rel)?.div(&det)?;
        Ok((t1, t2))
    }

    pub fn contains(&self, x: &[ExactNumber]) -> Result<bool> {
        let (t1, t2) = self.coordinates(x)?;
        let ctx = self.context();
        let one = ExactNumber::one(ctx);
        Ok(t1.sign()? != Sign::Negative
            && t2.sign()? != Sign::Negative
            && t1.lt(&one)?
            && t2.lt(&one)?)
    }

    pub fn to_polygon(&self) -> Result<Polygon> {
        let a = self.anchor.clone();
        let b = vector::add(&a, &self.v1)?;
        let c = vector::add(&b, &self.v2)?;
        let d = vector::add(&a, &self.v2)?;
        // edges t2=0 and t1=0 closed; only the anchor vertex is closed
        let positive = vector::cross(&self.v1, &self.v2)?.sign()? == Sign::Positive;
        if positive {
            Polygon::new(
                vec![a, b, c, d],
                vec![true, false, false, true],
                vec![true, false, false, false],
            )
        } else {
            Polygon::new(
                vec![a, d, c, b],
                vec![true, false, false, true],
                vec![true, false, false, false],
            )
        }
    }
}

/// A window in internal space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    Intervals(IntervalUnion),
    Polygon(Polygon),
}

impl Window {
    pub fn dim(&self) -> usize {
        match self {
            Window::Intervals(_) => 1,
            Window::Polygon(_) => 2,
        }
    }

    pub fn measure(&self) -> Result<ExactNumber> {
        match self {
            Window::Intervals(u) => Ok(u.measure()),
            Window::Polygon(p) => p.area(),
        }
    }

    pub fn contains(&self, x: &[ExactNumber]) -> Result<bool> {
        match self {
            Window::Intervals(u) => {
                if x.len() != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, got: x.len() });
                }
                u.contains(&x[0])
            }
            Window::Polygon(p) => p.contains(x),
        }
    }

    /// Closed bounding box, `None` for an empty window.
    pub fn bounding_box(&self) -> Result<Option<ExactBox>> {
        match self {
            Window::Intervals(u) => Ok(u.bounds().map(|(a, b)| ExactBox::interval(a, b))),
            Window::Polygon(p) => p.bounding_box().map(Some),
        }
    }

    pub fn translate(&self, t: &[ExactNumber]) -> Result<Self> {
        match self {
            Window::Intervals(u) => {
                if t.len() != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, got: t.len() });
                }
                Ok(Window::Intervals(u.translate(&t[0])))
            }
            Window::Polygon(p) => Ok(Window::Polygon(p.translate(t)?)),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Intervals(u) => write!(f, "{u}"),
            Window::Polygon(p) => write!(f, "{p:?}"),
        }
    }
}

impl From<IntervalUnion> for Window {
    fn from(u: IntervalUnion) -> Self {
        Window::Intervals(u)
    }
}

impl From<Polygon> for Window {
    fn from(p: Polygon) -> Self {
        Window::Polygon(p)
    }
}
