//! JSON input documents and result records.
//!
//! Input documents carry a `kind` tag (`char0_hn`, `split`, `strong_hn`,
//! `cover`) plus kind-specific fields. Integers may be JSON numbers or
//! decimal strings; on output they are numbers when they fit in an `i64` and
//! strings otherwise. Rationals are always strings, `"n"` or `"p/q"`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bundle::{BundleDescriptor, HnBlock, HnType, SplitBundle, StrongHnData};
use crate::certificate::CoverModel;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Serde adapter for a single [`BigInt`].
pub mod json_int {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::int_to_value(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        super::value_to_int(&v)
            .ok_or_else(|| D::Error::custom(format!("expected an integer, got {v}")))
    }
}

/// Serde adapter for a list of [`BigInt`].
pub mod json_int_vec {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(super::int_to_value)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(|v| {
                super::value_to_int(v)
                    .ok_or_else(|| D::Error::custom(format!("expected an integer, got {v}")))
            })
            .collect()
    }
}

pub fn int_to_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(n.to_string()),
    }
}

fn value_to_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(num) => num
            .as_i64()
            .map(BigInt::from)
            .or_else(|| num.as_u64().map(BigInt::from)),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// A validated input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputDocument {
    Bundle(BundleDescriptor),
    Cover(CoverModel),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::Bundle(BundleDescriptor::CharZero(_)) => "char0_hn",
            InputDocument::Bundle(BundleDescriptor::Split { .. }) => "split",
            InputDocument::Bundle(BundleDescriptor::Strong(_)) => "strong_hn",
            InputDocument::Cover(_) => "cover",
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), self.kind().into());
        match self {
            InputDocument::Bundle(BundleDescriptor::CharZero(hn)) => {
                m.insert("blocks".into(), blocks_value(hn));
            }
            InputDocument::Bundle(BundleDescriptor::Split {
                bundle,
                characteristic,
            }) => {
                m.insert("characteristic".into(), (*characteristic).into());
                m.insert("exponents".into(), ints_value(bundle.exponents()));
            }
            InputDocument::Bundle(BundleDescriptor::Strong(d)) => {
                m.insert("characteristic".into(), d.characteristic().into());
                m.insert("delta".into(), d.delta().into());
                m.insert("blocks".into(), blocks_value(d.hn()));
            }
            InputDocument::Cover(cm) => {
                m.insert("cover_degree".into(), int_to_value(cm.cover_degree()));
                m.insert("l_degree".into(), int_to_value(cm.l_degree()));
                m.insert("exponents".into(), ints_value(cm.exponents().exponents()));
            }
        }
        Value::Object(m)
    }
}

fn ints_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

fn blocks_value(hn: &HnType) -> Value {
    Value::Array(
        hn.blocks()
            .iter()
            .map(|b| Value::Array(vec![b.rank().into(), int_to_value(b.degree())]))
            .collect(),
    )
}

/// Parses and validates an input document.
///
/// Syntax errors carry the line and column; validation errors name the field.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(obj) = value else {
        return Err(Error::Parse("the document must be a JSON object".into()));
    };
    let fields = Fields(&obj);
    let kind = match obj.get("kind") {
        Some(Value::String(k)) => k.as_str(),
        Some(_) => return Err(Error::validation("kind", "must be a string")),
        None => return Err(Error::validation("kind", "missing")),
    };
    match kind {
        "char0_hn" => {
            fields.only(&["kind", "characteristic", "blocks"])?;
            if let Some(c) = fields.opt_u64("characteristic")? {
                if c != 0 {
                    return Err(Error::validation(
                        "characteristic",
                        format!("char0_hn documents have characteristic 0, got {c}"),
                    ));
                }
            }
            Ok(InputDocument::Bundle(BundleDescriptor::CharZero(
                fields.blocks()?,
            )))
        }
        "split" => {
            fields.only(&["kind", "characteristic", "exponents"])?;
            let characteristic = fields.opt_u64("characteristic")?.unwrap_or(0);
            let bundle = SplitBundle::new(fields.ints("exponents")?)?;
            Ok(InputDocument::Bundle(BundleDescriptor::split(
                bundle,
                characteristic,
            )?))
        }
        "strong_hn" => {
            fields.only(&["kind", "characteristic", "delta", "blocks"])?;
            let p = fields
                .opt_u64("characteristic")?
                .ok_or_else(|| Error::validation("characteristic", "missing"))?;
            let delta = fields
                .opt_u64("delta")?
                .ok_or_else(|| Error::validation("delta", "missing"))?;
            let delta = u32::try_from(delta)
                .map_err(|_| Error::validation("delta", format!("{delta} is too large")))?;
            let data = StrongHnData::new(p, delta, fields.blocks()?)?;
            Ok(InputDocument::Bundle(BundleDescriptor::Strong(data)))
        }
        "cover" => {
            fields.only(&["kind", "cover_degree", "l_degree", "exponents"])?;
            let cm = CoverModel::new(
                fields.int("cover_degree")?,
                fields.int("l_degree")?,
                SplitBundle::new(fields.ints("exponents")?)?,
            )?;
            Ok(InputDocument::Cover(cm))
        }
        other => Err(Error::validation(
            "kind",
            format!("unknown kind `{other}`; expected char0_hn, split, strong_hn or cover"),
        )),
    }
}

struct Fields<'a>(&'a Map<String, Value>);

impl Fields<'_> {
    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::validation(
                k.clone(),
                "unexpected field for this kind",
            )),
            None => Ok(()),
        }
    }

    fn get(&self, name: &str) -> Result<&Value> {
        self.0
            .get(name)
            .ok_or_else(|| Error::validation(name, "missing"))
    }

    fn int(&self, name: &str) -> Result<BigInt> {
        let v = self.get(name)?;
        value_to_int(v)
            .ok_or_else(|| Error::validation(name, format!("expected an integer, got {v}")))
    }

    fn opt_u64(&self, name: &str) -> Result<Option<u64>> {
        match self.0.get(name) {
            None => Ok(None),
            Some(v) => v.as_u64().map(Some).ok_or_else(|| {
                Error::validation(name, format!("expected a non-negative integer, got {v}"))
            }),
        }
    }

    fn ints(&self, name: &str) -> Result<Vec<BigInt>> {
        let Value::Array(items) = self.get(name)? else {
            return Err(Error::validation(name, "expected an array of integers"));
        };
        items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                value_to_int(v).ok_or_else(|| {
                    Error::validation(
                        format!("{name}[{i}]"),
                        format!("expected an integer, got {v}"),
                    )
                })
            })
            .collect()
    }

    fn blocks(&self) -> Result<HnType> {
        let Value::Array(items) = self.get("blocks")? else {
            return Err(Error::validation(
                "blocks",
                "expected an array of [rank, degree] pairs",
            ));
        };
        let blocks = items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                let field = format!("blocks[{i}]");
                let pair = match item {
                    Value::Array(pair) if pair.len() == 2 => pair,
                    _ => {
                        return Err(Error::validation(
                            field,
                            format!("expected [rank, degree], got {item}"),
                        ))
                    }
                };
                let rank = pair[0].as_u64().filter(|&r| r >= 1).ok_or_else(|| {
                    Error::validation(
                        field.clone(),
                        format!("rank must be a positive integer, got {}", pair[0]),
                    )
                })?;
                let degree = value_to_int(&pair[1]).ok_or_else(|| {
                    Error::validation(
                        field.clone(),
                        format!("degree must be an integer, got {}", pair[1]),
                    )
                })?;
                HnBlock::new(rank as usize, degree).map_err(|e| match e {
                    Error::Validation { reason, .. } => Error::validation(field, reason),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HnType::new(blocks)
    }
}

/// A `[rank, degree]` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPair(pub usize, #[serde(with = "json_int")] pub BigInt);

/// A primitive ray `[eta, fiber]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayPair(
    #[serde(with = "json_int")] pub BigInt,
    #[serde(with = "json_int")] pub BigInt,
);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HnReport {
    pub blocks: Vec<BlockPair>,
}

impl HnReport {
    pub fn new(hn: &HnType) -> Self {
        HnReport {
            blocks: hn
                .blocks()
                .iter()
                .map(|b| BlockPair(b.rank(), b.degree().clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaReport {
    pub r: usize,
    pub lambda: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeReport {
    pub r: usize,
    pub lambda: Rational,
    pub rays: [RayPair; 2],
}

impl ConeReport {
    pub fn new(r: usize, lambda: Rational, cone: &crate::cone::Cone2D) -> Self {
        let ray = |x: &crate::cone::Ray| RayPair(x.eta().clone(), x.fiber().clone());
        ConeReport {
            r,
            lambda,
            rays: [ray(cone.ray_a()), ray(cone.ray_b())],
        }
    }
}

/// Exponents of `⋀^r E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeReport {
    pub r: usize,
    #[serde(with = "json_int_vec")]
    pub exponents: Vec<BigInt>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field_of(err: Error) -> String {
        match err {
            Error::Validation { field, .. } => field,
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn parses_examples() {
        let doc =
            parse_input(r#"{"kind":"split","characteristic":2,"exponents":[3,1,0]}"#).unwrap();
        match &doc {
            InputDocument::Bundle(b @ BundleDescriptor::Split { .. }) => {
                assert_eq!(b.total_rank(), 3);
                assert_eq!(b.characteristic(), 2);
            }
            other => panic!("{other:?}"),
        }
        let doc =
            parse_input(r#"{"kind":"strong_hn","characteristic":2,"delta":1,"blocks":[[2,3]]}"#)
                .unwrap();
        let InputDocument::Bundle(BundleDescriptor::Strong(d)) = doc else {
            panic!()
        };
        assert_eq!((d.characteristic(), d.delta()), (2, 1));
        let err = parse_input(r#"{"kind":"char0_hn","blocks":[[1,1],[1,3]]}"#).unwrap_err();
        assert!(err.to_string().contains("strictly decreasing"), "{err}");
        assert_eq!(field_of(err), "blocks[1]");
    }

    #[test]
    fn cover_document() {
        let doc =
            parse_input(r#"{"kind":"cover","cover_degree":2,"l_degree":1,"exponents":[3,3]}"#)
                .unwrap();
        assert_eq!(doc.kind(), "cover");
        let err =
            parse_input(r#"{"kind":"cover","cover_degree":0,"l_degree":1,"exponents":[3,3]}"#)
                .unwrap_err();
        assert_eq!(field_of(err), "cover_degree");
    }

    #[test]
    fn validation_errors_name_fields() {
        let cases = [
            (r#"{"kind":"split","exponents":[3]}"#, "exponents"),
            (r#"{"kind":"split","exponents":[3,"x"]}"#, "exponents[1]"),
            (
                r#"{"kind":"split","characteristic":4,"exponents":[3,1]}"#,
                "characteristic",
            ),
            (
                r#"{"kind":"strong_hn","characteristic":6,"delta":0,"blocks":[[2,1]]}"#,
                "characteristic",
            ),
            (
                r#"{"kind":"strong_hn","characteristic":5,"blocks":[[2,1]]}"#,
                "delta",
            ),
            (r#"{"kind":"char0_hn","blocks":[[0,1],[1,0]]}"#, "blocks[0]"),
            (r#"{"kind":"char0_hn","blocks":[[1,1,1]]}"#, "blocks[0]"),
            (r#"{"kind":"char0_hn","blocks":[[1,1]]}"#, "blocks"),
            (
                r#"{"kind":"char0_hn","characteristic":3,"blocks":[[2,1]]}"#,
                "characteristic",
            ),
            (r#"{"kind":"split","exponents":[1,2],"delta":1}"#, "delta"),
            (r#"{"kind":"torus"}"#, "kind"),
            (r#"{"exponents":[1,2]}"#, "kind"),
        ];
        for (text, field) in cases {
            assert_eq!(field_of(parse_input(text).unwrap_err()), field, "{text}");
        }
    }

    #[test]
    fn syntax_errors_report_position() {
        let err =
            parse_input("{\n  \"kind\": \"split\",\n  \"exponents\": [1, 2,]\n}").unwrap_err();
        assert!(
            matches!(err, Error::Parse(ref m) if m.contains("line 3")),
            "{err}"
        );
        assert!(matches!(parse_input("[1,2]"), Err(Error::Parse(_))));
    }

    #[test]
    fn large_integers_as_strings() {
        let doc =
            parse_input(r#"{"kind":"split","exponents":["123456789012345678901234567890",-1]}"#)
                .unwrap();
        let v = doc.to_value();
        assert_eq!(
            v["exponents"][0],
            Value::String("123456789012345678901234567890".into())
        );
        assert_eq!(v["exponents"][1], Value::from(-1));
        assert_eq!(parse_input(&v.to_string()).unwrap(), doc);
    }

    #[test]
    fn report_round_trip() {
        let rep = ConeReport {
            r: 1,
            lambda: Rational::new(3, 4),
            rays: [RayPair(0.into(), 1.into()), RayPair(4.into(), (-3).into())],
        };
        let text = serde_json::to_string(&rep).unwrap();
        assert_eq!(text, r#"{"r":1,"lambda":"3/4","rays":[[0,1],[4,-3]]}"#);
        assert_eq!(serde_json::from_str::<ConeReport>(&text).unwrap(), rep);
    }

    fn arb_doc() -> impl Strategy<Value = InputDocument> {
        let split = (
            prop::collection::vec(-1000i64..1000, 2..6),
            prop::sample::select(vec![0u64, 2, 3, 7]),
        )
            .prop_map(|(v, c)| {
                let b = SplitBundle::from_i64s(&v).unwrap();
                InputDocument::Bundle(BundleDescriptor::split(b, c).unwrap())
            });
        let strong = (
            prop::collection::vec(-40i64..40, 2..5),
            0u32..4,
            prop::sample::select(vec![2u64, 5, 11]),
        )
            .prop_map(|(v, delta, p)| {
                let hn = crate::bundle::hn_of_split(&SplitBundle::from_i64s(&v).unwrap());
                InputDocument::Bundle(BundleDescriptor::Strong(
                    StrongHnData::new(p, delta, hn).unwrap(),
                ))
            });
        let cover =
            (1i64..50, -5i64..5, prop::collection::vec(-9i64..9, 2..5)).prop_map(|(c, e, v)| {
                InputDocument::Cover(
                    CoverModel::new(c.into(), e.into(), SplitBundle::from_i64s(&v).unwrap())
                        .unwrap(),
                )
            });
        prop_oneof![split, strong, cover]
    }

    proptest! {
        #[test]
        fn documents_round_trip(doc in arb_doc()) {
            let text = serde_json::to_string_pretty(&doc.to_value()).unwrap();
            let back = parse_input(&text).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(serde_json::to_string_pretty(&back.to_value()).unwrap(), text);
        }
    }
}
