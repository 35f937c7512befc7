use super::{
    biased_ellipsoid_sampler, check_dim, sample_ellipsoid, sample_ellipsoid_rejection,
    sample_unit_ball_rejection, MAX_REJECTION_DIM,
};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::geometry::{Ellipsoid, EllipsoidSpec};
use crate::linalg::{Vector, MAX_DIM};
use crate::rng::RngStream;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Points per derived stream. Chunk `k` always draws from
/// `RngStream::new(seed).derive(k)`, independent of scheduling.
pub const CHUNK_SIZE: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Uniform ball sample mapped through the ellipsoid's affine map.
    Transform,
    /// Box-rejection ball sample mapped through the affine map.
    BallRejection,
    /// Box rejection directly over the ellipsoid's bounding box.
    EllipsoidRejection,
    /// Centre-biased negative control.
    Biased,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Transform => "transform",
            Method::BallRejection => "ball_rejection",
            Method::EllipsoidRejection => "ellipsoid_rejection",
            Method::Biased => "biased",
        }
    }

    pub fn max_dim(self) -> usize {
        match self {
            Method::Transform | Method::Biased => MAX_DIM,
            Method::BallRejection | Method::EllipsoidRejection => MAX_REJECTION_DIM,
        }
    }

    fn draw(self, e: &Ellipsoid, rng: &mut RngStream) -> Vector {
        match self {
            Method::Transform => sample_ellipsoid(e, rng),
            Method::BallRejection => {
                let u = sample_unit_ball_rejection(e.dim(), rng).expect("dimension checked");
                e.forward(&u).expect("dimension checked")
            }
            Method::EllipsoidRejection => {
                sample_ellipsoid_rejection(e, rng).expect("dimension checked")
            }
            Method::Biased => biased_ellipsoid_sampler(e, rng),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transform" => Ok(Method::Transform),
            "ball_rejection" => Ok(Method::BallRejection),
            "ellipsoid_rejection" | "reject" => Ok(Method::EllipsoidRejection),
            "biased" => Ok(Method::Biased),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

fn points_as_arrays<S: Serializer>(
    points: &[Vector],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(points.iter().map(Vector::as_slice))
}

/// A reproducible set of sample points and everything needed to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch {
    pub dim: usize,
    pub seed: u64,
    pub method: Method,
    pub count: usize,
    pub spec: EllipsoidSpec,
    #[serde(serialize_with = "points_as_arrays")]
    pub points: Vec<Vector>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// [`sample_batch_with`] using the default [`Execution`].
pub fn sample_batch(e: &Ellipsoid, count: usize, seed: u64, method: Method) -> Result<SampleBatch> {
    sample_batch_with(e, count, seed, method, Execution::default())
}

pub fn sample_batch_with(
    e: &Ellipsoid,
    count: usize,
    seed: u64,
    method: Method,
    exec: Execution,
) -> Result<SampleBatch> {
    check_dim(e.dim(), method.max_dim())?;
    if count == 0 {
        return Err(Error::InsufficientSamples {
            expected_per_bin: 0.0,
            minimum: 1.0,
        });
    }
    let root = RngStream::new(seed);
    let chunks = count.div_ceil(CHUNK_SIZE);
    let parts = map_indexed(chunks, exec, |k| {
        let mut rng = root.derive(k as u64);
        let len = CHUNK_SIZE.min(count - k * CHUNK_SIZE);
        (0..len)
            .map(|_| method.draw(e, &mut rng))
            .collect::<Vec<_>>()
    });
    Ok(SampleBatch {
        dim: e.dim(),
        seed,
        method,
        count,
        spec: e.spec().clone(),
        points: parts.into_iter().flatten().collect(),
    })
}
