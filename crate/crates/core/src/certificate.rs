//! Human-diffable certificates for twisted factorizations, and an independent
//! verifier that rebuilds the automorphism from the serialized tower.

use serde::{Deserialize, Serialize};

use crate::automorphism::FieldState;
use crate::error::{Error, Result};
use crate::expr::{parse_element, print_element};
use crate::linalg::Matrix;
use crate::tower::{FieldTower, RationalFunctions, TowerElement};
use crate::twisted::{is_member_with, TwistedFactorization};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A square matrix with row-major entries written in the element grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixText {
    pub n: usize,
    pub entries: Vec<String>,
}

impl MatrixText {
    pub fn print(m: &Matrix<TowerElement>, tower: &FieldTower) -> Self {
        MatrixText {
            n: m.n(),
            entries: m.entries().iter().map(|e| print_element(e, tower)).collect(),
        }
    }

    pub fn parse(&self, tower: &FieldTower) -> Result<Matrix<TowerElement>> {
        if self.entries.len() != self.n * self.n {
            return Err(Error::InvalidInput(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.n,
                self.n
            )));
        }
        Matrix::try_from_fn(self.n, |i, j| parse_element(&self.entries[i * self.n + j], tower))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockText {
    pub names: Vec<String>,
    /// Image matrix of the block: `φ(g_i) = Σ_j images[i][j] g_j`.
    pub images: MatrixText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerText {
    pub blocks: Vec<BlockText>,
}

impl TowerText {
    pub fn print(state: &FieldState) -> Self {
        let tower = state.tower();
        let blocks = tower
            .blocks()
            .iter()
            .zip(state.block_images())
            .map(|(b, img)| BlockText {
                names: b.names.clone(),
                images: MatrixText::print(&img.matrix, tower),
            })
            .collect();
        TowerText { blocks }
    }

    /// Replays every block extension on a fresh state.
    pub fn replay(&self) -> Result<FieldState> {
        let mut state = FieldState::new();
        for b in &self.blocks {
            let images = b.images.parse(state.tower())?;
            state.extend_block(b.names.clone(), images)?;
        }
        Ok(state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorText {
    pub matrix: MatrixText,
    pub sign: i8,
    pub witness: MatrixText,
    /// `φ(witness)`, recomputed and compared by the verifier.
    pub witness_image: MatrixText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub engine_version: String,
    pub seed: u64,
    pub target: MatrixText,
    pub factors: Vec<FactorText>,
    pub tower_version: usize,
    pub tower: TowerText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<String>>,
    #[serde(default)]
    pub collapsible: bool,
}

impl Certificate {
    pub fn new(fac: &TwistedFactorization, state: &FieldState, seed: u64) -> Result<Self> {
        let tower = state.tower();
        let factors = fac
            .factors
            .iter()
            .map(|f| {
                Ok(FactorText {
                    matrix: MatrixText::print(&f.matrix, tower),
                    sign: f.sign,
                    witness: MatrixText::print(&f.witness, tower),
                    witness_image: MatrixText::print(&state.apply_matrix(&f.witness)?, tower),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Certificate {
            engine_version: ENGINE_VERSION.to_string(),
            seed,
            target: MatrixText::print(&fac.target, tower),
            factors,
            tower_version: state.version(),
            tower: TowerText::print(state),
            shift: fac.shift.as_ref().map(|d| d.iter().map(|x| x.to_string()).collect()),
            collapsible: fac.collapsible,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }
}

fn malformed(e: Error) -> Error {
    match e {
        Error::Syntax { .. } | Error::UnknownGenerator(_) | Error::InvalidInput(_) | Error::InvalidName(_) => {
            Error::MalformedCertificate(e.to_string())
        }
        other => other,
    }
}

/// Re-derives `φ` from the serialized tower and re-checks every factor and
/// the product. Unparseable content is an error; anything that parses but
/// fails a check yields `false`.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    let f = RationalFunctions;
    let state = match cert.tower.replay() {
        Ok(s) => s,
        Err(e @ (Error::Syntax { .. } | Error::UnknownGenerator(_) | Error::InvalidName(_))) => {
            return Err(malformed(e))
        }
        Err(_) => return Ok(false),
    };
    if cert.factors.len() > 3 || state.version() != cert.tower_version {
        return Ok(false);
    }
    let tower = state.tower();
    let parse = |m: &MatrixText| m.parse(tower).map_err(malformed);
    let target = match parse(&cert.target) {
        Ok(t) => t,
        Err(Error::MalformedCertificate(m)) => return Err(Error::MalformedCertificate(m)),
        Err(_) => return Ok(false),
    };
    let n = target.n();
    let mut prod = Matrix::identity(&f, n);
    for fac in &cert.factors {
        let parsed = (|| -> Result<_> {
            Ok((parse(&fac.matrix)?, parse(&fac.witness)?, parse(&fac.witness_image)?))
        })();
        let (m, y, y_img) = match parsed {
            Ok(x) => x,
            Err(Error::MalformedCertificate(msg)) => return Err(Error::MalformedCertificate(msg)),
            Err(_) => return Ok(false),
        };
        if m.n() != n || y.n() != n || y_img.n() != n {
            return Ok(false);
        }
        match state.apply_matrix(&y) {
            Ok(p) if p == y_img => {}
            _ => return Ok(false),
        }
        if !is_member_with(&f, &m, fac.sign, &y, &y_img)? {
            return Ok(false);
        }
        prod = prod.mul(&f, &m)?;
    }
    Ok(prod == target)
}

pub fn verify_json(text: &str) -> Result<bool> {
    verify_certificate(&Certificate::from_json(text)?)
}
