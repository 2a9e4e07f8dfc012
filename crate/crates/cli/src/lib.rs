//! Theory files and series output for the `coulomb` binary.

use std::collections::BTreeMap;
use std::path::Path;

use coulomb_core::abelian::{AbelianData, AbelianError};
use coulomb_core::rootdata::{Builtin, RootDatum, RootError};
use coulomb_core::series::{FugacityGroup, Rational, SeriesError, TruncatedSeries};
use coulomb_core::theory::{
    build_abelian, build_quiver, build_so_instanton, GaugeTheory, MatterWeights, Quiver,
    TheoryError, Weight,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON document")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error("the custom builder needs a gauge group")]
    MissingGauge,
    #[error("gauge group {given} does not match the {builder} builder's {built}")]
    GaugeMismatch {
        given: String,
        builder: &'static str,
        built: String,
    },
    #[error("a top-level flavor group is only allowed with the custom builder")]
    FlavorNotAllowed,
    #[error("{0} is only available for abelian theories")]
    NotAbelian(&'static str),
    #[error("bad series document: {0}")]
    Series(String),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    U,
    Su,
    Sp,
    SoOdd,
    SoEven,
    Torus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub kind: GroupKind,
    pub n: usize,
}

impl GroupSpec {
    pub fn datum(&self) -> Result<RootDatum, RootError> {
        let b = match self.kind {
            GroupKind::U => Builtin::U(self.n),
            GroupKind::Su => Builtin::Su(self.n),
            GroupKind::Sp => Builtin::Sp(self.n),
            GroupKind::SoOdd => Builtin::SoOdd(self.n),
            GroupKind::SoEven => Builtin::SoEven(self.n),
            GroupKind::Torus => Builtin::Torus(self.n),
        };
        RootDatum::builtin(b)
    }
}

fn product(groups: &[GroupSpec]) -> Result<RootDatum, RootError> {
    let parts = groups
        .iter()
        .map(GroupSpec::datum)
        .collect::<Result<Vec<_>, _>>()?;
    RootDatum::product(&parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperSpec {
    pub gauge: Vec<i64>,
    #[serde(default)]
    pub flavor: Vec<i64>,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

/// One hypermultiplet per entry; the negated weights are added for the
/// quaternionic structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatterSpec {
    Quiver {
        vertices: usize,
        edges: Vec<[usize; 2]>,
        v: Vec<usize>,
        w: Vec<usize>,
        #[serde(default)]
        flavored: bool,
    },
    Abelian {
        alpha: Vec<Vec<i64>>,
        #[serde(default)]
        flavored: bool,
        #[serde(default)]
        lift: Option<Vec<i64>>,
    },
    SoInstanton {
        n: usize,
        k: usize,
    },
    Custom {
        hypers: Vec<HyperSpec>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub refine: Option<bool>,
    #[serde(default, rename = "lambda_F")]
    pub lambda_f: Option<Vec<i64>>,
    #[serde(default)]
    pub radius_override: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub gauge: Option<Vec<GroupSpec>>,
    pub matter: MatterSpec,
    #[serde(default)]
    pub flavor: Option<Vec<GroupSpec>>,
    #[serde(default)]
    pub options: Options,
}

impl TheoryFile {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        let f: TheoryFile = serde_json::from_str(text)?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(SchemaError::Version(f.schema_version));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self, SchemaError> {
        let text = std::fs::read_to_string(path).map_err(|source| SchemaError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    fn builder_name(&self) -> &'static str {
        match self.matter {
            MatterSpec::Quiver { .. } => "quiver",
            MatterSpec::Abelian { .. } => "abelian",
            MatterSpec::SoInstanton { .. } => "so_instanton",
            MatterSpec::Custom { .. } => "custom",
        }
    }

    pub fn theory(&self) -> Result<GaugeTheory, SchemaError> {
        if self.flavor.is_some() && !matches!(self.matter, MatterSpec::Custom { .. }) {
            return Err(SchemaError::FlavorNotAllowed);
        }
        let mut th = match &self.matter {
            MatterSpec::Quiver {
                vertices,
                edges,
                v,
                w,
                flavored,
            } => {
                let q = Quiver {
                    vertices: *vertices,
                    edges: edges.iter().map(|e| (e[0], e[1])).collect(),
                };
                build_quiver(&q, v, w, *flavored)?
            }
            MatterSpec::Abelian {
                alpha, flavored, ..
            } => {
                let cols = alpha.first().map_or(0, Vec::len);
                build_abelian(alpha, cols, *flavored)?
            }
            MatterSpec::SoInstanton { n, k } => build_so_instanton(*n, *k)?,
            MatterSpec::Custom { hypers } => {
                let gauge = product(self.gauge.as_deref().ok_or(SchemaError::MissingGauge)?)?;
                let flavor = self.flavor.as_deref().map(product).transpose()?;
                let fr = flavor.as_ref().map_or(0, RootDatum::rank);
                let entries = hypers.iter().map(|h| {
                    let f = if h.flavor.is_empty() {
                        vec![0; fr]
                    } else {
                        h.flavor.clone()
                    };
                    (Weight::new(h.gauge.clone(), f), h.mult)
                });
                let matter = MatterWeights::from_hypers(entries, gauge.rank(), fr)?;
                GaugeTheory::new(self.name.clone(), gauge, matter, flavor)?
            }
        };
        if let (Some(given), false) = (
            &self.gauge,
            matches!(self.matter, MatterSpec::Custom { .. }),
        ) {
            let g = product(given)?;
            let same = g.rank() == th.gauge.rank()
                && g.simple_roots() == th.gauge.simple_roots()
                && g.simple_coroots() == th.gauge.simple_coroots();
            if !same {
                return Err(SchemaError::GaugeMismatch {
                    given: g.label().to_string(),
                    builder: self.builder_name(),
                    built: th.gauge.label().to_string(),
                });
            }
        }
        th.name = self.name.clone();
        Ok(th)
    }

    /// The abelian data of an `abelian` file, with its lift.
    pub fn abelian(&self) -> Result<AbelianData, SchemaError> {
        match &self.matter {
            MatterSpec::Abelian { alpha, lift, .. } => {
                let cols = alpha.first().map_or(0, Vec::len);
                Ok(AbelianData::new(alpha.clone(), cols, lift.clone())?)
            }
            _ => Err(SchemaError::NotAbelian("abelian-ring")),
        }
    }

    /// Background flux named in the file: `options.lambda_F`, or the lift of
    /// a flavored abelian theory.
    pub fn default_lambda_f(&self) -> Option<Vec<i64>> {
        self.options
            .lambda_f
            .clone()
            .or_else(|| match &self.matter {
                MatterSpec::Abelian {
                    flavored: true,
                    lift,
                    ..
                } => lift.clone(),
                _ => None,
            })
    }
}

/// `{"schema_version", "cutoff", "group": {...}, "coefficients": {t: {fug: c}}}`;
/// fugacity exponents are comma-joined, rationals are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub schema_version: u32,
    pub cutoff: usize,
    pub group: GroupDocument,
    pub coefficients: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

fn join(e: &[i64]) -> String {
    e.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl SeriesDocument {
    pub fn from_series(s: &TruncatedSeries) -> Self {
        let mut coefficients = BTreeMap::new();
        for (e, poly) in s.coeffs().iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let inner = poly
                .terms()
                .map(|(f, c)| (join(f), c.to_string()))
                .collect();
            coefficients.insert(e.to_string(), inner);
        }
        Self {
            schema_version: SCHEMA_VERSION,
            cutoff: s.cutoff(),
            group: GroupDocument {
                free_rank: s.group().free_rank(),
                torsion: s.group().torsion_orders().to_vec(),
            },
            coefficients,
        }
    }

    pub fn to_series(&self) -> Result<TruncatedSeries, SchemaError> {
        let bad = |m: String| SchemaError::Series(m);
        let group = FugacityGroup::new(self.group.free_rank, self.group.torsion.clone())
            .map_err(|e: SeriesError| bad(e.to_string()))?;
        let mut s = TruncatedSeries::zero(group.clone(), self.cutoff);
        for (e, inner) in &self.coefficients {
            let e: usize = e.parse().map_err(|_| bad(format!("t exponent {e:?}")))?;
            for (f, c) in inner {
                let fug: Vec<i64> = if f.is_empty() {
                    Vec::new()
                } else {
                    f.split(',')
                        .map(|x| x.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| bad(format!("fugacity {f:?}")))?
                };
                let c: Rational = c.parse().map_err(|_| bad(format!("coefficient {c:?}")))?;
                s.add_monomial(e, &fug, c).map_err(|e| bad(e.to_string()))?;
            }
        }
        Ok(s)
    }
}

pub fn to_json(s: &TruncatedSeries) -> String {
    serde_json::to_string_pretty(&SeriesDocument::from_series(s))
        .expect("series documents serialize")
}

pub fn from_json(text: &str) -> Result<TruncatedSeries, SchemaError> {
    serde_json::from_str::<SeriesDocument>(text)?.to_series()
}

/// `t_exp,fugacity,coefficient` rows; the identity fugacity is written `1`.
pub fn to_csv(s: &TruncatedSeries) -> String {
    let mut out = String::from("t_exp,fugacity,coefficient\n");
    for (e, poly) in s.coeffs().iter().enumerate() {
        for (f, c) in poly.terms() {
            let m = s.group().format_monomial(f);
            let m = if m.is_empty() { "1".to_string() } else { m };
            out.push_str(&format!("{e},{m},{c}\n"));
        }
    }
    out
}
