//! Polynomial input files: JSON with either an ascending `coeffs` list of
//! rational strings, or a `roots` list of `[root, multiplicity]` pairs plus
//! a `leading` coefficient. Serialization is canonical: fixed key order,
//! fully reduced rationals, so `write(parse(s))` is stable.

use crate::polycore::{Poly, Rat, RootSpec};
use crate::{Error, Result};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// On-disk polynomial description. Exactly one of `coeffs` / `roots` is
/// present; `leading` accompanies `roots`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolySpecFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leading: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<(String, usize)>>,
}

fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::InvalidInput(format!("bad rational {s:?}: {e}")))
}

impl PolySpecFile {
    pub fn parse(text: &str) -> Result<PolySpecFile> {
        let file: PolySpecFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("spec file: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.coeffs, &self.roots) {
            (Some(_), Some(_)) | (None, None) => Err(Error::InvalidInput(
                "spec file needs exactly one of coeffs / roots".into(),
            )),
            (Some(coeffs), None) => {
                if self.leading.is_some() {
                    return Err(Error::InvalidInput(
                        "leading is only meaningful with roots".into(),
                    ));
                }
                if coeffs.is_empty() {
                    return Err(Error::InvalidInput("coeffs must be nonempty".into()));
                }
                for c in coeffs {
                    parse_rat(c)?;
                }
                Ok(())
            }
            (None, Some(roots)) => {
                let leading = self
                    .leading
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("roots form needs leading".into()))?;
                if parse_rat(leading)?.is_zero() {
                    return Err(Error::InvalidInput("leading must be nonzero".into()));
                }
                for (r, m) in roots {
                    parse_rat(r)?;
                    if *m == 0 {
                        return Err(Error::InvalidInput("multiplicity must be positive".into()));
                    }
                }
                Ok(())
            }
        }
    }

    /// The described polynomial, expanded.
    pub fn to_poly(&self) -> Result<Poly> {
        self.validate()?;
        if let Some(coeffs) = &self.coeffs {
            let cs = coeffs.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>()?;
            let p = Poly::new(cs);
            if p.is_zero() {
                return Err(Error::InvalidInput("zero polynomial".into()));
            }
            return Ok(p);
        }
        crate::polycore::from_roots(&self.to_root_spec()?.unwrap())
    }

    /// The root list, when the file is in roots form.
    pub fn to_root_spec(&self) -> Result<Option<RootSpec>> {
        self.validate()?;
        let Some(roots) = &self.roots else {
            return Ok(None);
        };
        let leading = parse_rat(self.leading.as_deref().unwrap())?;
        let pairs = roots
            .iter()
            .map(|(r, m)| Ok((parse_rat(r)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(RootSpec::new(leading, pairs)?))
    }

    pub fn from_poly(p: &Poly) -> PolySpecFile {
        PolySpecFile {
            coeffs: Some(p.coeffs().iter().map(|c| c.to_string()).collect()),
            leading: None,
            roots: None,
        }
    }

    pub fn from_root_spec(spec: &RootSpec) -> PolySpecFile {
        PolySpecFile {
            coeffs: None,
            leading: Some(spec.leading.to_string()),
            roots: Some(
                spec.sorted_roots()
                    .iter()
                    .map(|(r, m)| (r.to_string(), *m))
                    .collect(),
            ),
        }
    }

    /// Canonical single-line rendering: fixed key order, reduced rationals,
    /// roots sorted ascending.
    pub fn canonical(&self) -> Result<String> {
        self.validate()?;
        let norm = if let Some(coeffs) = &self.coeffs {
            PolySpecFile {
                coeffs: Some(
                    coeffs
                        .iter()
                        .map(|c| parse_rat(c).map(|r| r.to_string()))
                        .collect::<Result<Vec<_>>>()?,
                ),
                leading: None,
                roots: None,
            }
        } else {
            PolySpecFile::from_root_spec(&self.to_root_spec()?.unwrap())
        };
        serde_json::to_string(&norm).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{rat, rat_int};

    #[test]
    fn coeffs_round_trip() {
        let text = r#"{ "coeffs": ["2/4", "0", "-3"] }"#;
        let f = PolySpecFile::parse(text).unwrap();
        let p = f.to_poly().unwrap();
        assert_eq!(p.coeff(0), rat(1, 2));
        assert_eq!(p.coeff(2), rat_int(-3));
        let canon = f.canonical().unwrap();
        assert_eq!(canon, r#"{"coeffs":["1/2","0","-3"]}"#);
        // canonicalization is idempotent
        let again = PolySpecFile::parse(&canon).unwrap().canonical().unwrap();
        assert_eq!(again, canon);
    }

    #[test]
    fn roots_round_trip() {
        let text = r#"{ "leading": "3", "roots": [["2", 1], ["-1/2", 2]] }"#;
        let f = PolySpecFile::parse(text).unwrap();
        let spec = f.to_root_spec().unwrap().unwrap();
        assert_eq!(spec.degree(), 3);
        let canon = f.canonical().unwrap();
        assert_eq!(canon, r#"{"leading":"3","roots":[["-1/2",2],["2",1]]}"#);
        let p = f.to_poly().unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.evaluate(&rat_int(2)), rat_int(0));
    }

    #[test]
    fn rejects_malformed() {
        assert!(PolySpecFile::parse(r#"{}"#).is_err());
        assert!(PolySpecFile::parse(r#"{"coeffs": ["1"], "roots": []}"#).is_err());
        assert!(PolySpecFile::parse(r#"{"roots": [["1", 1]]}"#).is_err());
        assert!(PolySpecFile::parse(r#"{"coeffs": ["one"]}"#).is_err());
        assert!(PolySpecFile::parse(r#"{"leading": "0", "roots": [["1", 1]]}"#).is_err());
        assert!(PolySpecFile::parse(r#"{"leading": "1", "roots": [["1", 0]]}"#).is_err());
    }
}
