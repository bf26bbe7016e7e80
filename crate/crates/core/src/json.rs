//! JSON encoding shared by the CLI and the bindings.
//!
//! | type | encoding |
//! |---|---|
//! | scalar | number, or `"p/q"` for a non-integer rational |
//! | [`D2Element`] | `[a0, a1, a2, a3]` |
//! | [`MatD2`] | rows of D2 elements |
//! | [`GalileanMotion`] | `{"a", "b", "theta"}` |
//! | [`GalileanPoint`] | `{"x", "y"}` |
//! | [`GrassmannElement`] | `[a0, a1, a2, a3]` over `1, e1, e2, e1e2` |
//! | [`Cl3Element`] | 8 coefficients in [`crate::grassmann::CL3_BASIS_NAMES`] order |
//! | [`RepElement`] | `{"rep", "matrix"}` or `{"rep": "grassmann", "element"}` |
//!
//! Every type here also implements `serde::Serialize` and `serde::Deserialize` through this codec.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::galilean::{GalileanMotion, RepElement, RepId, RepPayload};
use crate::grassmann::{Cl3Element, GrassmannElement};
use crate::matrix::MatD2;
use crate::pimenov::D2Element;
use crate::plane::{GalileanPoint, ProjectionRow, SpherePoint, PROJECTION_CSV_HEADER};
use crate::scalar::Scalar;

pub trait JsonCodec: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got `{v}`"))
}

fn scalar<T: Scalar>(v: &Value) -> Result<T> {
    T::from_json(v).ok_or_else(|| bad(&format!("a {} scalar", T::NAME), v))
}

fn scalars<T: Scalar, const N: usize>(v: &Value, what: &str) -> Result<[T; N]> {
    let arr = v.as_array().filter(|a| a.len() == N).ok_or_else(|| bad(what, v))?;
    let parsed = arr.iter().map(scalar).collect::<Result<Vec<T>>>()?;
    Ok(parsed.try_into().unwrap_or_else(|_| unreachable!()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn obj_scalar<T: Scalar>(v: &Value, key: &str) -> Result<T> {
    scalar(field(v, key)?)
}

impl<T: Scalar> JsonCodec for D2Element<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(Scalar::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        // a bare number is accepted as a scalar element
        if !v.is_array() {
            return scalar(v).map(D2Element::scalar);
        }
        scalars::<T, 4>(v, "[a0, a1, a2, a3]").map(D2Element::from_coeffs)
    }
}

impl<T: Scalar> JsonCodec for MatD2<T> {
    fn to_json(&self) -> Value {
        Value::Array(
            self.rows().into_iter().map(|row| Value::Array(row.iter().map(JsonCodec::to_json).collect())).collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| bad("an array of rows", v))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("a row", r))?
                    .iter()
                    .map(D2Element::from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MatD2::from_rows(rows)
    }
}

impl<T: Scalar> JsonCodec for GalileanMotion<T> {
    fn to_json(&self) -> Value {
        json!({"a": self.a.to_json(), "b": self.b.to_json(), "theta": self.theta.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.is_array() {
            let [a, b, theta] = scalars::<T, 3>(v, "[a, b, theta]")?;
            return Ok(Self::new(a, b, theta));
        }
        Ok(Self::new(obj_scalar(v, "a")?, obj_scalar(v, "b")?, obj_scalar(v, "theta")?))
    }
}

impl<T: Scalar> JsonCodec for GalileanPoint<T> {
    fn to_json(&self) -> Value {
        json!({"x": self.x.to_json(), "y": self.y.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.is_array() {
            let [x, y] = scalars::<T, 2>(v, "[x, y]")?;
            return Ok(Self::new(x, y));
        }
        Ok(Self::new(obj_scalar(v, "x")?, obj_scalar(v, "y")?))
    }
}

impl<T: Scalar> JsonCodec for SpherePoint<T> {
    fn to_json(&self) -> Value {
        json!({"y": self.y.to_json(), "z": self.z.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.is_array() {
            let [y, z] = scalars::<T, 2>(v, "[y, z]")?;
            return Ok(Self::new(y, z));
        }
        Ok(Self::new(obj_scalar(v, "y")?, obj_scalar(v, "z")?))
    }
}

impl<T: Scalar> JsonCodec for GrassmannElement<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(Scalar::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        scalars::<T, 4>(v, "[a0, a1, a2, a3]").map(GrassmannElement::from_coeffs)
    }
}

impl<T: Scalar> JsonCodec for Cl3Element<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        scalars::<T, 8>(v, "8 coefficients").map(Cl3Element::new)
    }
}

impl<T: Scalar> JsonCodec for RepElement<T> {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("rep".into(), Value::String(self.rep().name().into()));
        match self.payload() {
            RepPayload::Matrix(x) => m.insert("matrix".into(), x.to_json()),
            RepPayload::Grassmann(q) => m.insert("element".into(), q.to_json()),
        };
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rep: RepId = field(v, "rep")?
            .as_str()
            .ok_or_else(|| bad("a representation name", v))?
            .parse()?;
        if rep == RepId::Grassmann {
            Ok(RepElement::grassmann(GrassmannElement::from_json(field(v, "element")?)?))
        } else {
            RepElement::matrix(rep, MatD2::from_json(field(v, "matrix")?)?)
        }
    }
}

impl<T: Scalar> JsonCodec for ProjectionRow<T> {
    fn to_json(&self) -> Value {
        let m: Map<String, Value> = PROJECTION_CSV_HEADER
            .iter()
            .zip(self.values())
            .map(|(k, v)| (k.to_string(), v.to_json()))
            .collect();
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let vals = PROJECTION_CSV_HEADER.iter().map(|k| obj_scalar(v, k)).collect::<Result<Vec<T>>>()?;
        Ok(ProjectionRow::from_values(vals.try_into().unwrap_or_else(|_| unreachable!())))
    }
}

macro_rules! serde_via_codec {
    ($($ty:ident),*) => {$(
        impl<T: Scalar> Serialize for $ty<T> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.to_json().serialize(s)
            }
        }

        impl<'de, T: Scalar> Deserialize<'de> for $ty<T> {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let v = Value::deserialize(d)?;
                <$ty<T> as JsonCodec>::from_json(&v).map_err(D::Error::custom)
            }
        }
    )*};
}

serde_via_codec!(
    D2Element,
    MatD2,
    GalileanMotion,
    GalileanPoint,
    SpherePoint,
    GrassmannElement,
    Cl3Element,
    RepElement,
    ProjectionRow
);
