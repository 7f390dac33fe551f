//! JSON interchange for bodies and subspaces.
//!
//! ```json
//! {"type":"H","dim":2,"normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":[1,1,1,1],"tags":["symmetric"]}
//! {"type":"V","dim":2,"vertices":[[1,0],[0,1],[-1,-1]]}
//! {"ambient":2,"dim":1,"basis":[[0.6,0.8]],"offset":[0,0]}
//! ```
//!
//! Subspace bases are listed column by column.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{vertex_enumerate, HPolytope, Subspace, VPolytope};
use crate::error::{GeomError, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum BodyFile {
    H {
        dim: usize,
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<String>,
    },
    V {
        dim: usize,
        vertices: Vec<Vec<f64>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub ambient: usize,
    pub dim: usize,
    pub basis: Vec<Vec<f64>>,
    #[serde(default)]
    pub offset: Option<Vec<f64>>,
}

/// A body as read from disk, in whichever representation it was given.
#[derive(Clone, Debug)]
pub enum Body {
    H(HPolytope),
    V(VPolytope),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::H(p) => p.dim(),
            Body::V(p) => p.dim(),
        }
    }

    pub fn to_h(&self) -> Result<HPolytope> {
        match self {
            Body::H(p) => Ok(p.clone()),
            Body::V(p) => super::facet_enumerate(p),
        }
    }

    pub fn to_v(&self) -> Result<VPolytope> {
        match self {
            Body::H(p) => vertex_enumerate(p),
            Body::V(p) => Ok(p.clone()),
        }
    }
}

fn vector(dim: usize, v: &[f64]) -> Result<DVector<f64>> {
    if v.len() != dim {
        return Err(GeomError::DimensionMismatch { expected: dim, got: v.len() });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::InvalidInput("non-finite coordinate".into()));
    }
    Ok(DVector::from_column_slice(v))
}

impl TryFrom<BodyFile> for Body {
    type Error = GeomError;

    fn try_from(f: BodyFile) -> Result<Self> {
        match f {
            BodyFile::H { dim, normals, offsets, tags } => {
                if normals.len() != offsets.len() {
                    return Err(GeomError::InvalidInput("normals and offsets differ in length".into()));
                }
                let normals = normals.iter().map(|a| vector(dim, a)).collect::<Result<Vec<_>>>()?;
                let p = HPolytope::new(normals, offsets)?;
                for tag in &tags {
                    match tag.as_str() {
                        "symmetric" if !p.is_symmetric() => {
                            return Err(GeomError::InvalidInput("tagged symmetric but facets are not paired".into()))
                        }
                        "origin_interior" if !p.origin_interior() => return Err(GeomError::OriginNotInterior),
                        "symmetric" | "origin_interior" => {}
                        other => return Err(GeomError::InvalidInput(format!("unknown tag {other:?}"))),
                    }
                }
                Ok(Body::H(p))
            }
            BodyFile::V { dim, vertices } => {
                let pts = vertices.iter().map(|v| vector(dim, v)).collect::<Result<Vec<_>>>()?;
                Ok(Body::V(VPolytope::new(pts)?))
            }
        }
    }
}

impl From<&HPolytope> for BodyFile {
    fn from(p: &HPolytope) -> Self {
        let mut tags = Vec::new();
        if p.is_symmetric() {
            tags.push("symmetric".to_string());
        }
        if p.origin_interior() {
            tags.push("origin_interior".to_string());
        }
        BodyFile::H {
            dim: p.dim(),
            normals: p.normals().iter().map(|a| a.as_slice().to_vec()).collect(),
            offsets: p.offsets().to_vec(),
            tags,
        }
    }
}

impl From<&VPolytope> for BodyFile {
    fn from(p: &VPolytope) -> Self {
        BodyFile::V { dim: p.dim(), vertices: p.vertices().iter().map(|v| v.as_slice().to_vec()).collect() }
    }
}

impl TryFrom<SubspaceFile> for Subspace {
    type Error = GeomError;

    fn try_from(f: SubspaceFile) -> Result<Self> {
        if f.basis.len() != f.dim {
            return Err(GeomError::DimensionMismatch { expected: f.dim, got: f.basis.len() });
        }
        let mut q = DMatrix::zeros(f.ambient, f.dim);
        for (j, col) in f.basis.iter().enumerate() {
            q.set_column(j, &vector(f.ambient, col)?);
        }
        let offset = match f.offset {
            Some(p) => vector(f.ambient, &p)?,
            None => DVector::zeros(f.ambient),
        };
        Subspace::new(q, offset)
    }
}

impl From<&Subspace> for SubspaceFile {
    fn from(s: &Subspace) -> Self {
        SubspaceFile {
            ambient: s.ambient_dim(),
            dim: s.dim(),
            basis: s.basis().column_iter().map(|c| c.iter().copied().collect()).collect(),
            offset: Some(s.offset().as_slice().to_vec()),
        }
    }
}

pub fn parse_body(json: &str) -> Result<Body> {
    serde_json::from_str::<BodyFile>(json)?.try_into()
}

pub fn parse_subspace(json: &str) -> Result<Subspace> {
    serde_json::from_str::<SubspaceFile>(json)?.try_into()
}

pub fn read_body(path: impl AsRef<Path>) -> Result<Body> {
    parse_body(&std::fs::read_to_string(path)?)
}

pub fn read_subspace(path: impl AsRef<Path>) -> Result<Subspace> {
    parse_subspace(&std::fs::read_to_string(path)?)
}

pub fn body_to_json(p: &HPolytope) -> String {
    serde_json::to_string(&BodyFile::from(p)).expect("finite floats serialize")
}

pub fn subspace_to_json(s: &Subspace) -> String {
    serde_json::to_string(&SubspaceFile::from(s)).expect("finite floats serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tagged_cube() {
        let b = parse_body(
            r#"{"type":"H","dim":2,"normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":[1,1,1,1],"tags":["symmetric","origin_interior"]}"#,
        )
        .unwrap();
        assert_eq!(b.to_h().unwrap(), HPolytope::cube(2));
    }

    #[test]
    fn rejects_false_tags() {
        let j = r#"{"type":"H","dim":1,"normals":[[1],[-1]],"offsets":[2,-1],"tags":["origin_interior"]}"#;
        assert!(matches!(parse_body(j), Err(GeomError::OriginNotInterior)));
        let j = r#"{"type":"H","dim":1,"normals":[[1],[-1]],"offsets":[2,1],"tags":["symmetric"]}"#;
        assert!(parse_body(j).is_err());
    }

    #[test]
    fn vertex_body() {
        let b = parse_body(r#"{"type":"V","dim":2,"vertices":[[1,0],[0,1],[-1,-1],[0,0]]}"#).unwrap();
        assert_eq!(b.to_v().unwrap().len(), 3);
    }

    #[test]
    fn wrong_width_is_rejected() {
        let j = r#"{"type":"V","dim":2,"vertices":[[1,0,0],[0,1],[-1,-1]]}"#;
        assert!(matches!(parse_body(j), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let p = HPolytope::regular_simplex(4).translated(&DVector::from_vec(vec![0.1, 1.0 / 3.0, -0.2, 1e-7]));
        let back = parse_body(&body_to_json(&p)).unwrap().to_h().unwrap();
        assert_eq!(back.offsets(), p.offsets());
        for (a, b) in back.normals().iter().zip(p.normals()) {
            assert_eq!(a.as_slice(), b.as_slice());
        }
    }

    #[test]
    fn subspace_round_trip() {
        let (c, s) = (0.6, 0.8);
        let f = Subspace::new(DMatrix::from_column_slice(3, 1, &[c, s, 0.0]), DVector::from_vec(vec![0.0, 0.0, 2.5]))
            .unwrap();
        let back = parse_subspace(&subspace_to_json(&f)).unwrap();
        assert_eq!(back.basis(), f.basis());
        assert_eq!(back.offset(), f.offset());
    }
}
