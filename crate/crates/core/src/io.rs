//! Operator and family file formats.
//!
//! A matrix file is a JSON document with fields `dim`, `re` and `im`, the
//! real and imaginary parts as dim x dim arrays of decimals. Hermiticity is
//! validated on load through the symmetrizing constructor, so corrupt files
//! are rejected rather than silently symmetrized.
//!
//! A family file lists matrix files with role tags:
//! `{"members": [{"path": "p1.json", "role": "projector"}, ...]}`.
//! Member paths are resolved relative to the family file's directory.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::operators::{HermitianOperator, Projector};
use crate::tol::Tolerances;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let dim = m.nrows();
        Self {
            dim,
            re: (0..dim)
                .map(|i| (0..dim).map(|j| m[(i, j)].re).collect())
                .collect(),
            im: (0..dim)
                .map(|i| (0..dim).map(|j| m[(i, j)].im).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        let shape_ok = self.re.len() == n
            && self.im.len() == n
            && self.re.iter().all(|row| row.len() == n)
            && self.im.iter().all(|row| row.len() == n);
        if !shape_ok {
            return Err(Error::NotSquare {
                rows: self.re.len(),
                cols: self.re.first().map_or(0, |r| r.len()),
            });
        }
        Ok(CMatrix::from_fn(n, n, |i, j| {
            C64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Load a Hermitian operator, validating through symmetrization: the
/// symmetrization defect is returned and must stay below the rejection
/// threshold.
pub fn load_hermitian(path: &Path, tol: &Tolerances) -> Result<(HermitianOperator, f64)> {
    let file: MatrixFile = read_json(path)?;
    let raw = file.to_matrix()?;
    let sym = HermitianOperator::symmetrize(raw, tol)?;
    Ok((sym.op, sym.defect))
}

pub fn save_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    let file = MatrixFile::from_matrix(m);
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Role of a family member: a projector (logic element) or a general effect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MemberRole {
    Projector,
    Effect,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyMember {
    pub path: String,
    pub role: MemberRole,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    pub members: Vec<FamilyMember>,
}

/// A loaded operator family, split by role.
#[derive(Debug, Clone)]
pub struct LoadedFamily {
    pub projectors: Vec<Projector>,
    pub effects: Vec<HermitianOperator>,
}

pub fn load_family(path: &Path, tol: &Tolerances) -> Result<LoadedFamily> {
    let file: FamilyFile = read_json(path)?;
    let base: PathBuf = path.parent().map_or_else(PathBuf::new, Path::to_path_buf);
    let mut projectors = Vec::new();
    let mut effects = Vec::new();
    for member in &file.members {
        let member_path = base.join(&member.path);
        let (op, _defect) = load_hermitian(&member_path, tol)?;
        match member.role {
            MemberRole::Projector => projectors.push(Projector::new(op, tol)?),
            MemberRole::Effect => effects.push(op),
        }
    }
    Ok(LoadedFamily {
        projectors,
        effects,
    })
}

pub fn save_family(path: &Path, members: &[FamilyMember]) -> Result<()> {
    let file = FamilyFile {
        members: members.to_vec(),
    };
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::pauli_y;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn matrix_round_trip_preserves_entries() {
        let dir = std::env::temp_dir().join("projlogic-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sigma_y.json");
        save_matrix(&path, pauli_y().matrix()).unwrap();
        let (loaded, defect) = load_hermitian(&path, &tol()).unwrap();
        assert_eq!(defect, 0.0);
        assert_eq!(loaded.matrix(), pauli_y().matrix());
    }

    #[test]
    fn corrupt_hermitian_file_is_rejected() {
        let dir = std::env::temp_dir().join("projlogic-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("corrupt.json");
        std::fs::write(
            &path,
            r#"{"dim": 2, "re": [[0.0, 1.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
        )
        .unwrap();
        assert!(matches!(
            load_hermitian(&path, &tol()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let dir = std::env::temp_dir().join("projlogic-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("shape.json");
        std::fs::write(&path, r#"{"dim": 3, "re": [[1.0]], "im": [[0.0]]}"#).unwrap();
        assert!(matches!(
            load_hermitian(&path, &tol()),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn family_round_trip_with_roles() {
        let t = tol();
        let dir = std::env::temp_dir().join("projlogic-family-test");
        std::fs::create_dir_all(&dir).unwrap();

        let p = Projector::from_basis_indices(2, &[0]);
        save_matrix(&dir.join("p1.json"), p.matrix()).unwrap();
        let effect = HermitianOperator::from_real_diagonal(&[0.5, 0.25]);
        save_matrix(&dir.join("t.json"), effect.matrix()).unwrap();

        let family_path = dir.join("family.json");
        save_family(
            &family_path,
            &[
                FamilyMember {
                    path: "p1.json".into(),
                    role: MemberRole::Projector,
                },
                FamilyMember {
                    path: "t.json".into(),
                    role: MemberRole::Effect,
                },
            ],
        )
        .unwrap();

        let loaded = load_family(&family_path, &t).unwrap();
        assert_eq!(loaded.projectors.len(), 1);
        assert_eq!(loaded.effects.len(), 1);
        assert_eq!(loaded.projectors[0].matrix(), p.matrix());

        // An effect tagged as projector is rejected.
        save_family(
            &family_path,
            &[FamilyMember {
                path: "t.json".into(),
                role: MemberRole::Projector,
            }],
        )
        .unwrap();
        assert!(matches!(
            load_family(&family_path, &t),
            Err(Error::NotIdempotent { .. })
        ));
    }

    #[test]
    fn missing_file_reports_the_path() {
        let err = load_hermitian(Path::new("/nonexistent/xyz.json"), &tol()).unwrap_err();
        match err {
            Error::Io { path, .. } => assert!(path.contains("xyz.json")),
            other => panic!("unexpected: {other:?}"),
        }
    }
}
