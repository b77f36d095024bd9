//! TOML workspace files: named rings, constants, maps, skew contexts,
//! polynomials, matrices, codes and an ordered task list.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use mpcode::mpc::MatrixProductCode;
use mpcode::skew::{principal_code_generator, PrincipalSkewCode, SkewContext, SkewPoly};
use mpcode::{Budget, Elem, LinearCode, MapDef, RMatrix, Ring, RingMap, RingSpec};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("{section}.{name}: {reason}")]
    Invalid {
        section: &'static str,
        name: String,
        reason: String,
    },
    #[error("{section}.{name}: unknown {kind} {target:?}")]
    Unresolved {
        section: &'static str,
        name: String,
        kind: &'static str,
        target: String,
    },
    #[error("{section}.{name}: definition refers back to itself")]
    Cycle { section: &'static str, name: String },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceConfig {
    #[serde(default)]
    pub budget: BudgetConfig,
    #[serde(default)]
    pub rings: BTreeMap<String, RingConfig>,
    #[serde(default)]
    pub constants: BTreeMap<String, ConstantConfig>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapConfig>,
    #[serde(default)]
    pub contexts: BTreeMap<String, ContextConfig>,
    #[serde(default)]
    pub polys: BTreeMap<String, PolyConfig>,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixConfig>,
    #[serde(default)]
    pub codes: BTreeMap<String, CodeConfig>,
    #[serde(default)]
    pub tasks: Vec<TaskConfig>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    #[serde(default = "default_codewords")]
    pub codewords: u64,
    #[serde(default = "default_kernel_ops")]
    pub kernel_ops: u64,
}

fn default_codewords() -> u64 {
    Budget::default().codewords
}

fn default_kernel_ops() -> u64 {
    Budget::default().kernel_ops
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig {
            codewords: default_codewords(),
            kernel_ops: default_kernel_ops(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingConfig {
    Zmod { m: u32 },
    Galois {
        p: u32,
        k: u32,
        /// Ascending coefficients of a monic irreducible modulus.
        modulus: Option<Vec<u32>>,
    },
    Product { factors: Vec<String> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantConfig {
    pub ring: String,
    pub value: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoleConfig {
    #[default]
    Endomorphism,
    Derivation,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapConfig {
    pub ring: String,
    pub kind: String,
    #[serde(default)]
    pub role: Option<RoleConfig>,
    /// The endomorphism a derivation is attached to.
    pub sigma: Option<String>,
    pub power: Option<u32>,
    pub perm: Option<Vec<usize>>,
    pub beta: Option<String>,
    pub values: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextConfig {
    pub ring: String,
    /// Map name; `identity` when omitted.
    pub sigma: Option<String>,
    /// Map name; the zero derivation when omitted.
    pub delta: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyConfig {
    pub context: String,
    /// Human syntax such as `X^2 + X + alpha`.
    pub expr: Option<String>,
    /// Ascending coefficient literals.
    pub coeffs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub ring: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CodeConfig {
    Explicit {
        ring: String,
        #[serde(default)]
        generators: Vec<Vec<String>>,
        length: Option<usize>,
    },
    Principal {
        g: String,
        f: String,
        h: Option<String>,
    },
    Mpc {
        inputs: Vec<String>,
        matrix: String,
    },
    Dual {
        of: String,
    },
}

/// One analysis request. Which keys matter depends on `kind`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskConfig {
    pub kind: String,
    pub name: Option<String>,
    pub code: Option<String>,
    pub matrix: Option<String>,
    pub op: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub poly: Option<String>,
    pub g: Option<String>,
    pub h: Option<String>,
    pub f: Option<String>,
    pub a: Option<String>,
    pub n: Option<usize>,
    pub suite: Option<String>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
    pub path: Option<String>,
    /// Per-task override of the codeword cap.
    pub budget: Option<u64>,
    /// Expected report fields; any mismatch fails the task.
    #[serde(default)]
    pub expect: BTreeMap<String, toml::Value>,
}

impl WorkspaceConfig {
    pub fn parse(text: &str) -> Result<WorkspaceConfig, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<WorkspaceConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        WorkspaceConfig::parse(&text)
    }
}

#[derive(Debug, Clone)]
pub enum ResolvedCode {
    Linear(LinearCode),
    Principal(PrincipalSkewCode),
    Mpc(MatrixProductCode),
}

impl ResolvedCode {
    pub fn linear(&self) -> &LinearCode {
        match self {
            ResolvedCode::Linear(c) => c,
            ResolvedCode::Principal(p) => p.code(),
            ResolvedCode::Mpc(m) => m.realized(),
        }
    }
}

/// Every named object, built and validated.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub budget: Budget,
    pub rings: BTreeMap<String, Ring>,
    pub constants: BTreeMap<String, (Ring, Elem)>,
    pub maps: BTreeMap<String, RingMap>,
    pub contexts: BTreeMap<String, Arc<SkewContext>>,
    pub polys: BTreeMap<String, SkewPoly>,
    pub matrices: BTreeMap<String, RMatrix>,
    pub codes: BTreeMap<String, ResolvedCode>,
    pub tasks: Vec<TaskConfig>,
}

fn invalid(section: &'static str, name: &str, reason: impl ToString) -> ConfigError {
    ConfigError::Invalid {
        section,
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn unresolved(section: &'static str, name: &str, kind: &'static str, target: &str) -> ConfigError {
    ConfigError::Unresolved {
        section,
        name: name.to_string(),
        kind,
        target: target.to_string(),
    }
}

impl Workspace {
    pub fn resolve(cfg: &WorkspaceConfig, budget_override: Option<u64>) -> Result<Workspace, ConfigError> {
        let mut ws = Workspace {
            budget: Budget {
                codewords: budget_override.unwrap_or(cfg.budget.codewords),
                kernel_ops: cfg.budget.kernel_ops,
            },
            tasks: cfg.tasks.clone(),
            ..Default::default()
        };
        let mut visiting = Vec::new();
        for name in cfg.rings.keys() {
            ws.ring_named(cfg, name, &mut visiting)?;
        }
        for (name, c) in &cfg.constants {
            let ring = ws.lookup_ring("constants", name, &c.ring)?;
            let e = ring.parse(&c.value).map_err(|e| invalid("constants", name, e))?;
            ws.constants.insert(name.clone(), (ring, e));
        }
        ws.resolve_maps(cfg)?;
        for (name, c) in &cfg.contexts {
            let ring = ws.lookup_ring("contexts", name, &c.ring)?;
            let sigma = match &c.sigma {
                Some(s) if s != "identity" => ws.lookup_map("contexts", name, s)?,
                _ => RingMap::identity(&ring),
            };
            let delta = match &c.delta {
                Some(d) => ws.lookup_map("contexts", name, d)?,
                None => RingMap::zero_derivation(&ring),
            };
            let ctx = SkewContext::new(&ring, sigma, delta).map_err(|e| invalid("contexts", name, e))?;
            ws.contexts.insert(name.clone(), ctx);
        }
        for (name, p) in &cfg.polys {
            let ctx = ws
                .contexts
                .get(&p.context)
                .cloned()
                .ok_or_else(|| unresolved("polys", name, "context", &p.context))?;
            let resolve = ws.resolver(ctx.ring());
            let poly = match (&p.expr, &p.coeffs) {
                (Some(e), None) => ctx.parse_poly(e, &resolve),
                (None, Some(cs)) => cs
                    .iter()
                    .map(|c| ws.element(ctx.ring(), c))
                    .collect::<mpcode::Result<Vec<_>>>()
                    .map(|v| ctx.poly(v)),
                _ => return Err(invalid("polys", name, "give exactly one of `expr` or `coeffs`")),
            }
            .map_err(|e| invalid("polys", name, e))?;
            drop(resolve);
            ws.polys.insert(name.clone(), poly);
        }
        for (name, m) in &cfg.matrices {
            let ring = ws.lookup_ring("matrices", name, &m.ring)?;
            let rows = ws.rows(&ring, &m.rows).map_err(|e| invalid("matrices", name, e))?;
            let mat = RMatrix::from_rows(&ring, &rows).map_err(|e| invalid("matrices", name, e))?;
            ws.matrices.insert(name.clone(), mat);
        }
        let mut visiting = Vec::new();
        for name in cfg.codes.keys() {
            ws.code_named(cfg, name, &mut visiting)?;
        }
        Ok(ws)
    }

    /// Constant names first, then ring literals.
    pub fn element(&self, ring: &Ring, token: &str) -> mpcode::Result<Elem> {
        let t = token.trim();
        match self.constants.get(t) {
            Some((r, e)) if r == ring => Ok(*e),
            _ => ring.parse(t),
        }
    }

    pub fn resolver<'a>(&'a self, ring: &'a Ring) -> impl Fn(&str) -> Option<Elem> + 'a {
        move |s: &str| match self.constants.get(s) {
            Some((r, e)) if r == ring => Some(*e),
            _ => None,
        }
    }

    fn rows(&self, ring: &Ring, rows: &[Vec<String>]) -> mpcode::Result<Vec<Vec<Elem>>> {
        rows.iter()
            .map(|r| r.iter().map(|t| self.element(ring, t)).collect())
            .collect()
    }

    fn lookup_ring(&self, section: &'static str, name: &str, target: &str) -> Result<Ring, ConfigError> {
        self.rings
            .get(target)
            .cloned()
            .ok_or_else(|| unresolved(section, name, "ring", target))
    }

    fn lookup_map(&self, section: &'static str, name: &str, target: &str) -> Result<RingMap, ConfigError> {
        self.maps
            .get(target)
            .cloned()
            .ok_or_else(|| unresolved(section, name, "map", target))
    }

    fn ring_named(
        &mut self,
        cfg: &WorkspaceConfig,
        name: &str,
        visiting: &mut Vec<String>,
    ) -> Result<Ring, ConfigError> {
        if let Some(r) = self.rings.get(name) {
            return Ok(r.clone());
        }
        if visiting.iter().any(|v| v == name) {
            return Err(ConfigError::Cycle {
                section: "rings",
                name: name.to_string(),
            });
        }
        let def = cfg
            .rings
            .get(name)
            .ok_or_else(|| unresolved("rings", visiting.last().map_or(name, |s| s), "ring", name))?;
        visiting.push(name.to_string());
        let ring = match def {
            RingConfig::Zmod { m } => Ring::zmod(*m),
            RingConfig::Galois { p, k, modulus: None } => Ring::galois(*p, *k),
            RingConfig::Galois {
                p,
                k,
                modulus: Some(m),
            } => Ring::new(RingSpec::GaloisField {
                p: *p,
                k: *k,
                modulus: m.clone(),
            }),
            RingConfig::Product { factors } => {
                let mut parts = Vec::with_capacity(factors.len());
                for f in factors {
                    parts.push(self.ring_named(cfg, f, visiting)?);
                }
                Ring::product(&parts)
            }
        }
        .map_err(|e| invalid("rings", name, e))?;
        visiting.pop();
        self.rings.insert(name.to_string(), ring.clone());
        Ok(ring)
    }

    fn resolve_maps(&mut self, cfg: &WorkspaceConfig) -> Result<(), ConfigError> {
        // endomorphisms first so derivations can refer to them
        let (endos, derivs): (Vec<_>, Vec<_>) = cfg.maps.iter().partition(|(_, m)| {
            let role = m.role.unwrap_or(match m.kind.as_str() {
                "zero" | "inner" => RoleConfig::Derivation,
                _ => RoleConfig::Endomorphism,
            });
            role == RoleConfig::Endomorphism
        });
        for (name, m) in endos.into_iter().chain(derivs) {
            let ring = self.lookup_ring("maps", name, &m.ring)?;
            let def = match m.kind.as_str() {
                "identity" => MapDef::Identity,
                "zero" => MapDef::Zero,
                "frobenius" => MapDef::Frobenius {
                    power: m.power.unwrap_or(1),
                },
                "permutation" => MapDef::Permutation(
                    m.perm
                        .clone()
                        .ok_or_else(|| invalid("maps", name, "a permutation needs `perm`"))?,
                ),
                "inner" => {
                    let beta = m
                        .beta
                        .as_deref()
                        .ok_or_else(|| invalid("maps", name, "an inner derivation needs `beta`"))?;
                    MapDef::Inner {
                        beta: self.element(&ring, beta).map_err(|e| invalid("maps", name, e))?,
                    }
                }
                "table" => {
                    let values = m
                        .values
                        .as_ref()
                        .ok_or_else(|| invalid("maps", name, "a table needs `values`"))?;
                    MapDef::Table(
                        values
                            .iter()
                            .map(|v| self.element(&ring, v))
                            .collect::<mpcode::Result<_>>()
                            .map_err(|e| invalid("maps", name, e))?,
                    )
                }
                other => return Err(invalid("maps", name, format!("unknown map kind {other:?}"))),
            };
            let is_derivation = matches!(def, MapDef::Zero | MapDef::Inner { .. })
                || m.role == Some(RoleConfig::Derivation);
            let map = if is_derivation {
                let sigma = match m.sigma.as_deref() {
                    None | Some("identity") => RingMap::identity(&ring),
                    Some(s) => self.lookup_map("maps", name, s)?,
                };
                RingMap::derivation(&ring, &sigma, &def)
            } else {
                RingMap::endomorphism(&ring, &def)
            }
            .map_err(|e| invalid("maps", name, e))?;
            self.maps.insert(name.clone(), map);
        }
        Ok(())
    }

    fn poly(&self, section: &'static str, name: &str, target: &str) -> Result<SkewPoly, ConfigError> {
        self.polys
            .get(target)
            .cloned()
            .ok_or_else(|| unresolved(section, name, "polynomial", target))
    }

    fn code_named(
        &mut self,
        cfg: &WorkspaceConfig,
        name: &str,
        visiting: &mut Vec<String>,
    ) -> Result<ResolvedCode, ConfigError> {
        if let Some(c) = self.codes.get(name) {
            return Ok(c.clone());
        }
        if visiting.iter().any(|v| v == name) {
            return Err(ConfigError::Cycle {
                section: "codes",
                name: name.to_string(),
            });
        }
        let def = cfg
            .codes
            .get(name)
            .ok_or_else(|| unresolved("codes", visiting.last().map_or(name, |s| s), "code", name))?;
        visiting.push(name.to_string());
        let budget = self.budget;
        let code = match def {
            CodeConfig::Explicit {
                ring,
                generators,
                length,
            } => {
                let ring = self.lookup_ring("codes", name, ring)?;
                let gens = self.rows(&ring, generators).map_err(|e| invalid("codes", name, e))?;
                let n = match (length, gens.first()) {
                    (Some(n), _) => *n,
                    (None, Some(g)) => g.len(),
                    (None, None) => {
                        return Err(invalid("codes", name, "a code without generators needs `length`"))
                    }
                };
                let code = LinearCode::new(&ring, n, gens).map_err(|e| invalid("codes", name, e))?;
                ResolvedCode::Linear(code.with_budget(budget))
            }
            CodeConfig::Principal { g, f, h } => {
                let gp = self.poly("codes", name, g)?;
                let fp = self.poly("codes", name, f)?;
                let mut code = principal_code_generator(&gp, &fp).map_err(|e| invalid("codes", name, e))?;
                if let Some(h) = h {
                    let hp = self.poly("codes", name, h)?;
                    code = code.with_parity(&hp).map_err(|e| invalid("codes", name, e))?;
                }
                ResolvedCode::Principal(code)
            }
            CodeConfig::Mpc { inputs, matrix } => {
                let mut codes = Vec::with_capacity(inputs.len());
                for i in inputs {
                    let c = self.code_named(cfg, i, visiting)?;
                    codes.push(c.linear().clone().with_budget(budget));
                }
                let a = self
                    .matrices
                    .get(matrix)
                    .cloned()
                    .ok_or_else(|| unresolved("codes", name, "matrix", matrix))?;
                ResolvedCode::Mpc(MatrixProductCode::build(codes, a).map_err(|e| invalid("codes", name, e))?)
            }
            CodeConfig::Dual { of } => {
                let c = self.code_named(cfg, of, visiting)?;
                ResolvedCode::Linear(c.linear().dual().with_basis_generators().with_budget(budget))
            }
        };
        visiting.pop();
        self.codes.insert(name.to_string(), code.clone());
        Ok(code)
    }
}

/// Convenience for tests and ad hoc runs.
pub fn resolve_str(text: &str) -> Result<Workspace, ConfigError> {
    Workspace::resolve(&WorkspaceConfig::parse(text)?, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[rings.gf4]
kind = "galois"
p = 2
k = 2
modulus = [1, 1, 1]

[constants]
w = { ring = "gf4", value = "a" }

[maps.frob]
ring = "gf4"
kind = "frobenius"

[maps.inner]
ring = "gf4"
kind = "inner"
sigma = "frob"
beta = "w"

[contexts.ore]
ring = "gf4"
sigma = "frob"
delta = "inner"
"#;

    #[test]
    fn derivations_resolve_against_their_endomorphism() {
        let ws = resolve_str(BASE).unwrap();
        assert_eq!(ws.maps["inner"].role(), mpcode::MapRole::Derivation);
        assert!(!ws.maps["inner"].is_zero());
        let ctx = &ws.contexts["ore"];
        assert!(ctx.is_automorphism());
        assert!(!ctx.delta().is_zero());
    }

    #[test]
    fn polynomials_take_expr_or_coeffs_but_not_both() {
        let ok = format!("{BASE}\n[polys.p]\ncontext = \"ore\"\nexpr = \"X^2 + w X + 1\"\n[polys.q]\ncontext = \"ore\"\ncoeffs = [\"1\", \"w\", \"1\"]\n");
        let ws = resolve_str(&ok).unwrap();
        assert_eq!(ws.polys["p"], ws.polys["q"]);
        let both = format!("{BASE}\n[polys.p]\ncontext = \"ore\"\nexpr = \"X\"\ncoeffs = [\"0\", \"1\"]\n");
        assert!(matches!(resolve_str(&both), Err(ConfigError::Invalid { section: "polys", .. })));
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        let text = "[rings.bad]\nkind = \"galois\"\np = 2\nk = 2\nmodulus = [1, 0, 1]\n";
        assert!(matches!(resolve_str(text), Err(ConfigError::Invalid { section: "rings", .. })));
    }

    #[test]
    fn product_factor_cycles_are_reported() {
        let text = "[rings.a]\nkind = \"product\"\nfactors = [\"b\"]\n[rings.b]\nkind = \"product\"\nfactors = [\"a\"]\n";
        assert!(matches!(resolve_str(text), Err(ConfigError::Cycle { section: "rings", .. })));
    }

    #[test]
    fn dual_codes_resolve_through_references() {
        let text = r#"
[rings.z4]
kind = "zmod"
m = 4
[codes.d]
kind = "dual"
of = "c"
[codes.c]
kind = "explicit"
ring = "z4"
generators = [["1", "1"]]
"#;
        let ws = resolve_str(text).unwrap();
        assert_eq!(ws.codes["d"].linear().cardinality(), 4);
        assert!(ws.codes["d"].linear().contains(&ws.codes["c"].linear().generators()[0]).is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(
            WorkspaceConfig::parse("[rings.r]\nkind = \"zmod\"\nm = 4\nextra = 1\n"),
            Err(ConfigError::Syntax(_))
        ));
    }
}
