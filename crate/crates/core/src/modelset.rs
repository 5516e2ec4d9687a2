//! Model sets `Λ(Γ, W) = { p1(γ) : γ ∈ Γ, p2(γ) ∈ W }` in bounded regions.

use std::cmp::Ordering;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactnum::{ExactNumber, Sign};
use crate::scheme::{ExactBox, Scheme};
use crate::vector::{self, Vector};
use crate::window::Window;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelPoint {
    pub x: Vector,
    pub internal: Vector,
    pub z: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct ModelSetSample {
    pub scheme: Scheme,
    pub window: Window,
    pub phys_range: ExactBox,
    /// Range of the first lattice coordinate when the sample was generated
    /// block by block.
    pub n_range: Option<(BigInt, BigInt)>,
    pub points: Vec<ModelPoint>,
}

impl ModelSetSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn cmp_points(a: &ModelPoint, b: &ModelPoint) -> Result<Ordering> {
    for (x, y) in a.x.iter().zip(&b.x) {
        let o = x.try_cmp(y)?;
        if o != Ordering::Equal {
            return Ok(o);
        }
    }
    Ok(a.z.cmp(&b.z))
}

fn sort_points(points: &mut [ModelPoint]) -> Result<()> {
    let mut err = None;
    points.sort_by(|a, b| match cmp_points(a, b) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    err.map_or(Ok(()), Err)
}

fn check_window(scheme: &Scheme, window: &Window) -> Result<()> {
    if window.dim() != scheme.n() {
        return Err(Error::DimensionMismatch {
            expected: scheme.n(),
            got: window.dim(),
        });
    }
    Ok(())
}

/// All model-set points with physical coordinate in the closed box
/// `phys_range`, sorted by position.
pub fn generate(scheme: &Scheme, window: &Window, phys_range: &ExactBox) -> Result<ModelSetSample> {
    check_window(scheme, window)?;
    let mut points = Vec::new();
    if let Some(bbox) = window.bounding_box()? {
        for lv in scheme.enumerate_lattice(phys_range, &bbox)? {
            if window.contains(lv.internal())? {
                points.push(ModelPoint {
                    x: lv.physical().to_vec(),
                    internal: lv.internal().to_vec(),
                    z: lv.z,
                });
            }
        }
    }
    sort_points(&mut points)?;
    Ok(ModelSetSample {
        scheme: scheme.clone(),
        window: window.clone(),
        phys_range: phys_range.clone(),
        n_range: None,
        points,
    })
}

/// Hecke-scheme sample made of the blocks `Λ_n`, `n_lo ≤ n ≤ n_hi`.
pub fn generate_blocks(scheme: &Scheme, window: &Window, n_lo: i64, n_hi: i64) -> Result<ModelSetSample> {
    check_window(scheme, window)?;
    let hecke = scheme.hecke().ok_or(Error::NotHeckeScheme)?;
    let ctx = scheme.context().clone();
    let d = scheme.n();
    let mut points = Vec::new();
    if let Some(bbox) = window.bounding_box()? {
        for n in n_lo..=n_hi {
            let nn = BigInt::from(n);
            let base = vector::scale_int(&hecke.alpha, &nn);
            // m_i ranges over the integers with base_i + m_i in the bounding box
            let ranges: Vec<(BigInt, BigInt)> = (0..d)
                .map(|i| {
                    let lo = bbox.lo[i].try_sub(&base[i])?.ceil()?;
                    let hi = bbox.hi[i].try_sub(&base[i])?.floor()?;
                    Ok((lo, hi))
                })
                .collect::<Result<_>>()?;
            let mut m: Vec<BigInt> = ranges.iter().map(|r| r.0.clone()).collect();
            if ranges.iter().any(|(a, b)| a > b) {
                continue;
            }
            loop {
                let s: Vector = base
                    .iter()
                    .zip(&m)
                    .map(|(b, mi)| b + &ExactNumber::from_bigint(&ctx, mi))
                    .collect();
                if window.contains(&s)? {
                    let mut z = vec![nn.clone()];
                    z.extend(m.iter().cloned());
                    let lv = scheme.lattice_vector(z);
                    points.push(ModelPoint {
                        x: lv.physical().to_vec(),
                        internal: lv.internal().to_vec(),
                        z: lv.z,
                    });
                }
                // odometer over the m box
                let mut i = 0;
                while i < d {
                    m[i] += 1;
                    if m[i] <= ranges[i].1 {
                        break;
                    }
                    m[i] = ranges[i].0.clone();
                    i += 1;
                }
                if i == d {
                    break;
                }
            }
        }
    }
    sort_points(&mut points)?;
    let (lo, hi) = match (points.first(), points.last()) {
        (Some(a), Some(b)) => (a.x[0].clone(), b.x[0].clone()),
        _ => (ExactNumber::zero(&ctx), ExactNumber::zero(&ctx)),
    };
    Ok(ModelSetSample {
        scheme: scheme.clone(),
        window: window.clone(),
        phys_range: ExactBox::interval(lo, hi),
        n_range: Some((n_lo.into(), n_hi.into())),
        points,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityEstimate {
    pub count: usize,
    pub volume: f64,
    pub empirical: f64,
    #[serde(serialize_with = "crate::report::exact")]
    pub theoretical: ExactNumber,
    pub theoretical_float: f64,
}

/// Empirical density `count / vol(range)` against `mes W / |det Γ|`.
pub fn density_estimate(sample: &ModelSetSample) -> Result<DensityEstimate> {
    let volume = sample.phys_range.volume()?;
    if volume.sign()? != Sign::Positive {
        return Err(Error::EmptySample);
    }
    let theoretical = sample
        .window
        .measure()?
        .div(sample.scheme.lattice().det_abs())?;
    let volume_f = volume.to_f64();
    Ok(DensityEstimate {
        count: sample.len(),
        volume: volume_f,
        empirical: sample.len() as f64 / volume_f,
        theoretical_float: theoretical.to_f64(),
        theoretical,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub n: BigInt,
    /// Indices into the sample's points, in increasing position.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// One block per `n` in the covered range, empty blocks included.
    pub blocks: Vec<Block>,
    pub max_size: usize,
}

impl BlockDecomposition {
    pub fn nonempty(&self) -> usize {
        self.blocks.iter().filter(|b| !b.members.is_empty()).count()
    }
}

/// Splits a Hecke sample into the blocks `Λ_n = { n + <β, s> : s ∈ S_n }`.
pub fn blocks(sample: &ModelSetSample) -> Result<BlockDecomposition> {
    if sample.scheme.hecke().is_none() {
        return Err(Error::NotHeckeScheme);
    }
    let (lo, hi) = match &sample.n_range {
        Some(r) => r.clone(),
        None => {
            let ns = sample.points.iter().map(|p| &p.z[0]);
            match (ns.clone().min(), ns.max()) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => {
                    return Ok(BlockDecomposition {
                        blocks: Vec::new(),
                        max_size: 0,
                    })
                }
            }
        }
    };
    let width = (&hi - &lo + BigInt::one()).to_usize().unwrap_or(0);
    let mut blocks: Vec<Block> = (0..width)
        .map(|k| Block {
            n: &lo + BigInt::from(k),
            members: Vec::new(),
        })
        .collect();
    for (i, p) in sample.points.iter().enumerate() {
        let k = (&p.z[0] - &lo)
            .to_usize()
            .filter(|&k| k < width)
            .ok_or_else(|| Error::InvalidArgument(format!("point with n = {} outside block range", p.z[0])))?;
        blocks[k].members.push(i);
    }
    let max_size = blocks.iter().map(|b| b.members.len()).max().unwrap_or(0);
    Ok(BlockDecomposition { blocks, max_size })
}

#[derive(Clone, Debug)]
pub struct DeloneStats {
    pub min_gap: ExactNumber,
    pub max_gap: ExactNumber,
    pub distinct_gaps: Vec<ExactNumber>,
}

/// Nearest-neighbour gap statistics of a one-dimensional sample.
pub fn delone_stats(sample: &ModelSetSample) -> Result<DeloneStats> {
    if sample.scheme.m() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: sample.scheme.m(),
        });
    }
    if sample.points.len() < 2 {
        return Err(Error::NotEnoughPoints);
    }
    let mut gaps: Vec<ExactNumber> = sample
        .points
        .windows(2)
        .map(|w| &w[1].x[0] - &w[0].x[0])
        .collect();
    crate::exactnum::sort_exact(&mut gaps, |g| g)?;
    gaps.dedup();
    Ok(DeloneStats {
        min_gap: gaps[0].clone(),
        max_gap: gaps[gaps.len() - 1].clone(),
        distinct_gaps: gaps,
    })
}

/// Writes one CSV row per point: exact physical coordinates, their float
/// values and the lattice coordinates.
pub fn write_csv<W: Write>(sample: &ModelSetSample, out: W) -> Result<()> {
    let m = sample.scheme.m();
    let dim = sample.scheme.lattice().rank();
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    header.extend((1..=m).map(|i| format!("x{i}_float")));
    header.extend((1..=dim).map(|i| format!("z{i}")));
    w.write_record(&header)?;
    for p in &sample.points {
        let mut row: Vec<String> = p.x.iter().map(ToString::to_string).collect();
        row.extend(p.x.iter().map(|x| format!("{:.17}", x.to_f64())));
        row.extend(p.z.iter().map(ToString::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub scheme_sha256: String,
    pub window: String,
    pub range_lo: Vec<String>,
    pub range_hi: Vec<String>,
    pub count: usize,
}

/// Canonical text of a scheme: generator context and basis rows.
pub fn scheme_fingerprint(scheme: &Scheme) -> String {
    let mut s = format!("{:?}\nm={}\n", scheme.context(), scheme.m());
    for row in scheme.lattice().rows() {
        s.push_str(&vector::format(row));
        s.push('\n');
    }
    s
}

pub fn manifest(sample: &ModelSetSample) -> Manifest {
    let digest = Sha256::digest(scheme_fingerprint(&sample.scheme).as_bytes());
    Manifest {
        scheme_sha256: hex::encode(digest),
        window: sample.window.to_string(),
        range_lo: sample.phys_range.lo.iter().map(ToString::to_string).collect(),
        range_hi: sample.phys_range.hi.iter().map(ToString::to_string).collect(),
        count: sample.len(),
    }
}
