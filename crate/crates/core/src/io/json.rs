//! JSON forms of operators, symbols and residue tables. Every number is a
//! string in the `a/b+c/d*i` wire format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Gq, Matrix, MatrixPolynomial, Poly, RationalMatrixFunction};
use crate::error::{Error, Result};
use crate::mellin::FuchsOperator;

use super::dsl::parse_operator;

pub const SCHEMA: &str = "cone-green/1";

pub fn matrix_json(m: &Matrix) -> Vec<Vec<Gq>> {
    m.to_rows()
}

/// Coefficient matrices, lowest power first.
pub fn matpoly_json(p: &MatrixPolynomial) -> Vec<Vec<Vec<Gq>>> {
    p.coeffs().iter().map(matrix_json).collect()
}

pub fn poly_json(p: &Poly) -> Vec<Gq> {
    p.coeffs().to_vec()
}

fn matrix_from_json(size: usize, rows: &[Vec<Gq>]) -> Result<Matrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {size}x{size} matrix"
        )));
    }
    Ok(Matrix::from_rows(rows.to_vec()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub text: String,
    pub numerator: Vec<Vec<Vec<Gq>>>,
    pub denominator: Vec<Gq>,
}

impl From<&RationalMatrixFunction> for RationalJson {
    fn from(f: &RationalMatrixFunction) -> Self {
        RationalJson {
            text: f.to_string(),
            numerator: matpoly_json(f.numerator()),
            denominator: poly_json(f.denominator()),
        }
    }
}

/// An operator either as coefficient data
/// (`coefficients[j][k]` = matrix of `t^k` in `a_j(t)`) or as a DSL
/// expression with parameter bindings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, Gq>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<Vec<Vec<Gq>>>>>,
}

impl From<&FuchsOperator> for OperatorJson {
    fn from(a: &FuchsOperator) -> Self {
        OperatorJson {
            schema: SCHEMA.into(),
            size: Some(a.size()),
            mu: Some(a.mu()),
            coefficients: Some(a.coeffs().iter().map(matpoly_json).collect()),
            ..Default::default()
        }
    }
}

impl OperatorJson {
    pub fn to_operator(&self) -> Result<FuchsOperator> {
        if self.schema != SCHEMA {
            return Err(Error::InvalidInput(format!(
                "unknown schema `{}`",
                self.schema
            )));
        }
        match (&self.expression, &self.coefficients) {
            (Some(src), None) => parse_operator(src, &self.parameters)?.to_fuchs(),
            (None, Some(cs)) => {
                let size = self
                    .size
                    .ok_or_else(|| Error::InvalidInput("missing `size`".into()))?;
                let mu = self
                    .mu
                    .ok_or_else(|| Error::InvalidInput("missing `mu`".into()))?;
                let coeffs = cs
                    .iter()
                    .map(|p| {
                        let ms = p
                            .iter()
                            .map(|m| matrix_from_json(size, m))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(MatrixPolynomial::new(size, ms))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.is_empty() {
                    return Err(Error::InvalidInput("empty coefficient list".into()));
                }
                FuchsOperator::new(mu, coeffs)
            }
            _ => Err(Error::InvalidInput(
                "an operator needs exactly one of `expression` and `coefficients`".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip() {
        let mut params = BTreeMap::new();
        params.insert("a".to_string(), Gq::ratio(3, 2));
        params.insert("b".to_string(), Gq::complex(-2, 1, 1, 1));
        let src = OperatorJson {
            schema: SCHEMA.into(),
            expression: Some("d^2 + a*d + b".into()),
            parameters: params,
            ..Default::default()
        };
        let a = src.to_operator().unwrap();
        let text = serde_json::to_string(&OperatorJson::from(&a)).unwrap();
        assert!(text.contains("\"-3/2+0/1*i\""), "{text}");
        let back: OperatorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_operator().unwrap(), a);
    }
}
