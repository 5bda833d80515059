use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point, PolygonError, SimplePolygon, Transformation};
use crate::hazard::HazardFilter;
use crate::cde::QueryShape;
use crate::scalar::Scalar;
use crate::simplify::{simplify_polygon, SimplifyConfig, SimplifyMode};
use crate::surrogate::{Surrogate, SurrogateConfig};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{entity}: {source}")]
    Geometry { entity: String, source: PolygonError },
    #[error("schema violation: {0}")]
    Schema(String),
}

/// Shape preprocessing applied at instance load: conservative
/// simplification (items inflated, containers deflated, inferior-quality
/// zones inflated) and surrogate generation on the simplified shapes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrepConfig {
    pub simplify: SimplifyConfig,
    pub surrogate: SurrogateConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rotations<T> {
    /// Any angle is allowed.
    Continuous,
    /// Only the listed angles (radians) are allowed.
    Discrete(Vec<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Item<T> {
    pub id: String,
    pub demand: usize,
    pub shape_original: Arc<SimplePolygon<T>>,
    /// Inflated superset of the original shape; what the engine works on.
    pub shape_cde: Arc<SimplePolygon<T>>,
    /// Fail-fast surrogate of `shape_cde`.
    pub surrogate: Surrogate<T>,
    pub allowed_rotations: Rotations<T>,
    pub allow_flip: bool,
    pub min_quality: Option<u32>,
}

impl<T: Scalar> Item<T> {
    /// The query the engine answers when this item is placed under `t`.
    pub fn query_shape(&self, t: &Transformation<T>) -> QueryShape<T> {
        QueryShape::new(self.shape_cde.transformed(t), self.surrogate.transformed(t))
    }

    /// Relevance filter for this item's placements.
    pub fn hazard_filter(&self) -> HazardFilter {
        HazardFilter::min_quality(self.min_quality)
    }
}

/// An inferior-quality region of a container; hazardous to items requiring
/// a higher quality level.
#[derive(Clone, Debug, PartialEq)]
pub struct QualityZone<T> {
    pub quality: u32,
    pub shape_original: Arc<SimplePolygon<T>>,
    /// Inflated superset of the zone.
    pub shape_cde: Arc<SimplePolygon<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Container<T> {
    pub shape_original: Arc<SimplePolygon<T>>,
    /// Deflated subset of the original container shape.
    pub shape_cde: Arc<SimplePolygon<T>>,
    pub zones: Vec<QualityZone<T>>,
    pub cost: f64,
}

impl<T: Scalar> Container<T> {
    /// Rectangular strip container of fixed height and the given width;
    /// rectangles are their own simplification.
    pub fn strip(height: T, width: T) -> Self {
        let rect = Arc::new(SimplePolygon::rectangle(T::zero(), T::zero(), width, height));
        Self { shape_original: Arc::clone(&rect), shape_cde: rect, zones: Vec::new(), cost: 0.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Problem<T> {
    /// Single strip of fixed height and solver-controlled width.
    Strip { height: T },
    /// Fixed set of bins, used in declared order.
    Bins(Vec<Container<T>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance<T> {
    pub name: String,
    pub items: Vec<Item<T>>,
    pub problem: Problem<T>,
}

// ---------------------------------------------------------------------------
// JSON schema

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    strip_height: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bins: Option<Vec<BinDoc>>,
    items: Vec<ItemDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinDoc {
    shape: Vec<[f64; 2]>,
    cost: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    zones: Vec<ZoneDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZoneDoc {
    quality: u32,
    shape: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemDoc {
    id: String,
    demand: usize,
    shape: Vec<[f64; 2]>,
    rotations: RotationsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_quality: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_flip: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RotationsDoc {
    Degrees(Vec<f64>),
    Keyword(String),
}

fn parse_shape<T: Scalar>(
    raw: &[[f64; 2]],
    entity: &str,
) -> Result<SimplePolygon<T>, InstanceError> {
    let points = raw.iter().map(|&[x, y]| Point::new(T::cast(x), T::cast(y))).collect();
    SimplePolygon::new(points)
        .map_err(|source| InstanceError::Geometry { entity: entity.to_string(), source })
}

fn prep_shape<T: Scalar>(
    original: SimplePolygon<T>,
    mode: SimplifyMode,
    prep: &PrepConfig,
) -> (Arc<SimplePolygon<T>>, Arc<SimplePolygon<T>>) {
    let cde = simplify_polygon(&original, mode, &prep.simplify);
    (Arc::new(original), Arc::new(cde))
}

/// Parses, validates and preprocesses an instance document.
pub fn load_instance<T: Scalar>(json: &str, prep: &PrepConfig) -> Result<Instance<T>, InstanceError> {
    let doc: InstanceDoc = serde_json::from_str(json)?;

    let problem = match (doc.strip_height, doc.bins) {
        (Some(h), None) => {
            if h <= 0.0 {
                return Err(InstanceError::Schema("strip_height must be positive".into()));
            }
            Problem::Strip { height: T::cast(h) }
        }
        (None, Some(bins)) => {
            if bins.is_empty() {
                return Err(InstanceError::Schema("bins must not be empty".into()));
            }
            let mut containers = Vec::with_capacity(bins.len());
            for (bi, bin) in bins.iter().enumerate() {
                let shape = parse_shape::<T>(&bin.shape, &format!("bin #{bi}"))?;
                let (shape_original, shape_cde) = prep_shape(shape, SimplifyMode::Deflate, prep);
                let mut zones = Vec::with_capacity(bin.zones.len());
                for (zi, zone) in bin.zones.iter().enumerate() {
                    let zshape =
                        parse_shape::<T>(&zone.shape, &format!("zone #{zi} of bin #{bi}"))?;
                    let (zoriginal, zcde) = prep_shape(zshape, SimplifyMode::Inflate, prep);
                    zones.push(QualityZone {
                        quality: zone.quality,
                        shape_original: zoriginal,
                        shape_cde: zcde,
                    });
                }
                containers.push(Container {
                    shape_original,
                    shape_cde,
                    zones,
                    cost: bin.cost,
                });
            }
            Problem::Bins(containers)
        }
        (Some(_), Some(_)) | (None, None) => {
            return Err(InstanceError::Schema(
                "exactly one of strip_height and bins must be present".into(),
            ));
        }
    };

    let mut items = Vec::with_capacity(doc.items.len());
    for item in &doc.items {
        let shape = parse_shape::<T>(&item.shape, &format!("item {:?}", item.id))?;
        let (shape_original, shape_cde) = prep_shape(shape, SimplifyMode::Inflate, prep);
        let surrogate = Surrogate::generate(&shape_cde, &prep.surrogate);
        let allowed_rotations = match &item.rotations {
            RotationsDoc::Degrees(degs) => Rotations::Discrete(
                degs.iter().map(|d| T::cast(d.to_radians())).collect(),
            ),
            RotationsDoc::Keyword(kw) if kw == "continuous" => Rotations::Continuous,
            RotationsDoc::Keyword(kw) => {
                return Err(InstanceError::Schema(format!(
                    "item {:?}: unknown rotations keyword {kw:?}",
                    item.id
                )));
            }
        };
        items.push(Item {
            id: item.id.clone(),
            demand: item.demand,
            shape_original,
            shape_cde,
            surrogate,
            allowed_rotations,
            allow_flip: item.allow_flip,
            min_quality: item.min_quality,
        });
    }

    Ok(Instance { name: doc.name, items, problem })
}

impl<T: Scalar> Instance<T> {
    /// Serializes back to the instance schema (shapes in their normalized
    /// counter-clockwise order).
    pub fn to_json(&self) -> String {
        let shape_doc = |s: &SimplePolygon<T>| -> Vec<[f64; 2]> {
            s.vertices()
                .iter()
                .map(|p| [p.x.to_f64().unwrap(), p.y.to_f64().unwrap()])
                .collect()
        };
        let doc = InstanceDoc {
            name: self.name.clone(),
            strip_height: match &self.problem {
                Problem::Strip { height } => Some(height.to_f64().unwrap()),
                Problem::Bins(_) => None,
            },
            bins: match &self.problem {
                Problem::Strip { .. } => None,
                Problem::Bins(bins) => Some(
                    bins.iter()
                        .map(|b| BinDoc {
                            shape: shape_doc(&b.shape_original),
                            cost: b.cost,
                            zones: b
                                .zones
                                .iter()
                                .map(|z| ZoneDoc {
                                    quality: z.quality,
                                    shape: shape_doc(&z.shape_original),
                                })
                                .collect(),
                        })
                        .collect(),
                ),
            },
            items: self
                .items
                .iter()
                .map(|i| ItemDoc {
                    id: i.id.clone(),
                    demand: i.demand,
                    shape: shape_doc(&i.shape_original),
                    rotations: match &i.allowed_rotations {
                        Rotations::Continuous => RotationsDoc::Keyword("continuous".into()),
                        Rotations::Discrete(rads) => RotationsDoc::Degrees(
                            rads.iter().map(|r| r.to_f64().unwrap().to_degrees()).collect(),
                        ),
                    },
                    min_quality: i.min_quality,
                    allow_flip: i.allow_flip,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("instance serialization")
    }
}

/// Quality filter an item queries the engine with.
pub fn effective_quality_filter<T: Scalar>(item: &Item<T>) -> HazardFilter {
    item.hazard_filter()
}
