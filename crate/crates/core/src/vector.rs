//! Small helpers for vectors of exact numbers.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactnum::{Context, ExactNumber};

pub type Vector = Vec<ExactNumber>;

pub fn zeros(ctx: &Context, n: usize) -> Vector {
    vec![ExactNumber::zero(ctx); n]
}

fn check_len(a: &[ExactNumber], b: &[ExactNumber]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(())
}

pub fn add(a: &[ExactNumber], b: &[ExactNumber]) -> Result<Vector> {
    check_len(a, b)?;
    a.iter().zip(b).map(|(x, y)| x.try_add(y)).collect()
}

pub fn sub(a: &[ExactNumber], b: &[ExactNumber]) -> Result<Vector> {
    check_len(a, b)?;
    a.iter().zip(b).map(|(x, y)| x.try_sub(y)).collect()
}

pub fn neg(a: &[ExactNumber]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn scale_int(a: &[ExactNumber], k: &BigInt) -> Vector {
    a.iter().map(|x| x.scale_int(k)).collect()
}

pub fn scale(a: &[ExactNumber], k: &BigRational) -> Vector {
    a.iter().map(|x| x.scale(k)).collect()
}

pub fn scale_by(a: &[ExactNumber], k: &ExactNumber) -> Result<Vector> {
    a.iter().map(|x| x.mul(k)).collect()
}

pub fn dot(a: &[ExactNumber], b: &[ExactNumber]) -> Result<ExactNumber> {
    check_len(a, b)?;
    let ctx = a.first().map(|x| x.context().clone());
    let Some(ctx) = ctx else {
        return Err(Error::InvalidArgument("empty dot product".into()));
    };
    a.iter()
        .zip(b)
        .try_fold(ExactNumber::zero(&ctx), |acc, (x, y)| acc.try_add(&x.mul(y)?))
}

/// `Σ z_j · cols[j]`.
pub fn combine(ctx: &Context, cols: &[Vector], z: &[BigInt], dim: usize) -> Vector {
    let mut out = zeros(ctx, dim);
    for (col, zj) in cols.iter().zip(z) {
        if zj == &BigInt::from(0) {
            continue;
        }
        for (o, c) in out.iter_mut().zip(col) {
            *o = &*o + &c.scale_int(zj);
        }
    }
    out
}

/// 2D cross product `a.x b.y - a.y b.x`.
pub fn cross(a: &[ExactNumber], b: &[ExactNumber]) -> Result<ExactNumber> {
    if a.len() != 2 || b.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.len().max(b.len()),
        });
    }
    a[0].mul(&b[1])?.try_sub(&a[1].mul(&b[0])?)
}

pub fn is_zero(a: &[ExactNumber]) -> bool {
    a.iter().all(ExactNumber::is_zero)
}

pub fn format(a: &[ExactNumber]) -> String {
    let parts: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
