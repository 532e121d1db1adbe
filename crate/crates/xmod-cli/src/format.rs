//! JSON file formats and input resolution.
//!
//! Groups are element-index tables or permutation generator lists; crossed
//! modules, morphisms, and sequences are built from them with explicit
//! image tables. `catalog:` references resolve against the built-in
//! catalog, everything else is a filesystem path.

use serde_json::{json, Map, Value};

use xmod_core::catalog;
use xmod_core::group::{ActionByAutomorphisms, FiniteGroup, GroupHom};
use xmod_core::perm::Perm;
use xmod_core::xmod::{CrossedModule, ExactSequence, XModMorphism};

/// Structural problems (exit code 2) are separated from mathematical ones
/// (a well-formed object that violates its axioms), which the `validate`
/// command reports as a result.
#[derive(Debug, Clone)]
pub enum FormatError {
    Syntax(String),
    Invalid { kind: &'static str, message: String },
}

impl FormatError {
    fn syntax(message: impl Into<String>) -> FormatError {
        FormatError::Syntax(message.into())
    }

    pub fn message(&self) -> String {
        match self {
            FormatError::Syntax(m) => m.clone(),
            FormatError::Invalid { message, .. } => message.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ParsedInput {
    Group(FiniteGroup),
    XMod(CrossedModule),
    Morphism(XModMorphism),
    Sequence(ExactSequence),
}

impl ParsedInput {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInput::Group(_) => "group",
            ParsedInput::XMod(_) => "crossed-module",
            ParsedInput::Morphism(_) => "morphism",
            ParsedInput::Sequence(_) => "sequence",
        }
    }

    /// Largest group order occurring in the object.
    pub fn max_group_order(&self) -> usize {
        match self {
            ParsedInput::Group(g) => g.order(),
            ParsedInput::XMod(x) => x.g1().order().max(x.g2().order()),
            ParsedInput::Morphism(f) => [
                f.source().g1().order(),
                f.source().g2().order(),
                f.target().g1().order(),
                f.target().g2().order(),
            ]
            .into_iter()
            .max()
            .unwrap(),
            ParsedInput::Sequence(s) => [
                s.n().g1().order(),
                s.n().g2().order(),
                s.t().g1().order(),
                s.t().g2().order(),
                s.q().g1().order(),
                s.q().g2().order(),
            ]
            .into_iter()
            .max()
            .unwrap(),
        }
    }
}

/// Resolves a `catalog:` reference or a filesystem path.
pub fn resolve(reference: &str) -> Result<ParsedInput, FormatError> {
    if let Some(key) = reference.strip_prefix("catalog:") {
        if let Ok(g) = catalog::get_group(key) {
            return Ok(ParsedInput::Group(g));
        }
        if let Ok(x) = catalog::get_xmod(key) {
            return Ok(ParsedInput::XMod(x));
        }
        return match catalog::get_sequence(key) {
            Ok(s) => Ok(ParsedInput::Sequence(s)),
            Err(_) => Err(FormatError::syntax(format!("unknown catalog key '{key}'"))),
        };
    }
    let text = std::fs::read_to_string(reference)
        .map_err(|e| FormatError::syntax(format!("cannot read '{reference}': {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        FormatError::syntax(format!(
            "JSON syntax error in '{reference}' at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    parse_input(&value)
}

/// Dispatches on the shape of the object.
pub fn parse_input(value: &Value) -> Result<ParsedInput, FormatError> {
    let object = value
        .as_object()
        .ok_or_else(|| FormatError::syntax("top level must be a JSON object"))?;
    if object.contains_key("kappa") {
        Ok(ParsedInput::Sequence(parse_sequence(value)?))
    } else if object.contains_key("f1") {
        Ok(ParsedInput::Morphism(parse_morphism(value)?))
    } else if object.contains_key("g1") {
        Ok(ParsedInput::XMod(parse_xmod(value)?))
    } else if object.contains_key("kind") || object.contains_key("table") {
        Ok(ParsedInput::Group(parse_group(value)?))
    } else {
        Err(FormatError::syntax(
            "unrecognized object: expected one of the fields 'kappa', 'f1', 'g1', 'kind'",
        ))
    }
}

fn field<'v>(value: &'v Value, name: &str) -> Result<&'v Value, FormatError> {
    value
        .get(name)
        .ok_or_else(|| FormatError::syntax(format!("missing field '{name}'")))
}

fn index_array(value: &Value, name: &str) -> Result<Vec<usize>, FormatError> {
    value
        .as_array()
        .ok_or_else(|| FormatError::syntax(format!("field '{name}' must be an array")))?
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| FormatError::syntax(format!("field '{name}' must hold indices")))
        })
        .collect()
}

fn index_matrix(value: &Value, name: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    value
        .as_array()
        .ok_or_else(|| FormatError::syntax(format!("field '{name}' must be an array of arrays")))?
        .iter()
        .map(|row| index_array(row, name))
        .collect()
}

fn opt_name(value: &Value) -> Option<String> {
    value
        .get("name")
        .and_then(|v| v.as_str())
        .map(|s| s.to_string())
}

pub fn parse_group(value: &Value) -> Result<FiniteGroup, FormatError> {
    let kind = value
        .get("kind")
        .and_then(|v| v.as_str())
        .unwrap_or("table");
    match kind {
        "table" => {
            let table = index_matrix(field(value, "table")?, "table")?;
            let generators = match value.get("generators") {
                Some(v) => Some(index_array(v, "generators")?),
                None => None,
            };
            FiniteGroup::from_table(table, generators, opt_name(value)).map_err(|e| {
                FormatError::Invalid {
                    kind: "group",
                    message: e.to_string(),
                }
            })
        }
        "perm" => {
            let degree = field(value, "degree")?
                .as_u64()
                .ok_or_else(|| FormatError::syntax("field 'degree' must be a positive integer"))?
                as usize;
            let texts = field(value, "generators")?
                .as_array()
                .ok_or_else(|| FormatError::syntax("field 'generators' must be an array"))?;
            let mut perms = Vec::new();
            for t in texts {
                let text = t
                    .as_str()
                    .ok_or_else(|| FormatError::syntax("permutations must be strings"))?;
                perms.push(Perm::parse(text, degree).map_err(|e| FormatError::Invalid {
                    kind: "group",
                    message: e.to_string(),
                })?);
            }
            FiniteGroup::from_permutations(degree, &perms, opt_name(value)).map_err(|e| {
                FormatError::Invalid {
                    kind: "group",
                    message: e.to_string(),
                }
            })
        }
        other => Err(FormatError::syntax(format!("unknown group kind '{other}'"))),
    }
}

pub fn parse_xmod(value: &Value) -> Result<CrossedModule, FormatError> {
    let invalid = |message: String| FormatError::Invalid {
        kind: "crossed-module",
        message,
    };
    let g1 = parse_group(field(value, "g1")?)?;
    let g2 = parse_group(field(value, "g2")?)?;
    let boundary_images = index_array(field(value, "boundary")?, "boundary")?;
    let action_table = index_matrix(field(value, "action")?, "action")?;
    let boundary =
        GroupHom::new(&g1, &g2, boundary_images).map_err(|e| invalid(e.to_string()))?;
    let action =
        ActionByAutomorphisms::new(&g2, &g1, action_table).map_err(|e| invalid(e.to_string()))?;
    CrossedModule::new(g1, g2, boundary, action, opt_name(value))
        .map_err(|e| invalid(e.to_string()))
}

pub fn parse_morphism(value: &Value) -> Result<XModMorphism, FormatError> {
    let invalid = |message: String| FormatError::Invalid {
        kind: "morphism",
        message,
    };
    let source = parse_xmod(field(value, "source")?)?;
    let target = parse_xmod(field(value, "target")?)?;
    let f1_images = index_array(field(value, "f1")?, "f1")?;
    let f2_images = index_array(field(value, "f2")?, "f2")?;
    let f1 = GroupHom::new(source.g1(), target.g1(), f1_images)
        .map_err(|e| invalid(e.to_string()))?;
    let f2 = GroupHom::new(source.g2(), target.g2(), f2_images)
        .map_err(|e| invalid(e.to_string()))?;
    XModMorphism::new(source, target, f1, f2).map_err(|e| invalid(e.to_string()))
}

pub fn parse_sequence(value: &Value) -> Result<ExactSequence, FormatError> {
    let invalid = |message: String| FormatError::Invalid {
        kind: "sequence",
        message,
    };
    let n = parse_xmod(field(value, "n")?)?;
    let t = parse_xmod(field(value, "t")?)?;
    let q = parse_xmod(field(value, "q")?)?;
    let kappa_value = field(value, "kappa")?;
    let alpha_value = field(value, "alpha")?;
    let map = |v: &Value,
               name: &str,
               src: &CrossedModule,
               dst: &CrossedModule|
     -> Result<XModMorphism, FormatError> {
        let f1_images = index_array(field(v, "f1")?, &format!("{name}.f1"))?;
        let f2_images = index_array(field(v, "f2")?, &format!("{name}.f2"))?;
        let f1 = GroupHom::new(src.g1(), dst.g1(), f1_images)
            .map_err(|e| invalid(format!("{name}: {e}")))?;
        let f2 = GroupHom::new(src.g2(), dst.g2(), f2_images)
            .map_err(|e| invalid(format!("{name}: {e}")))?;
        XModMorphism::new(src.clone(), dst.clone(), f1, f2)
            .map_err(|e| invalid(format!("{name}: {e}")))
    };
    let kappa = map(kappa_value, "kappa", &n, &t)?;
    let alpha = map(alpha_value, "alpha", &t, &q)?;
    ExactSequence::new(kappa, alpha).map_err(|e| invalid(e.to_string()))
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    let table: Vec<Vec<usize>> = g
        .elements()
        .map(|a| g.elements().map(|b| g.mul(a, b)).collect())
        .collect();
    let mut object = Map::new();
    object.insert("kind".to_string(), json!("table"));
    object.insert("table".to_string(), json!(table));
    object.insert("generators".to_string(), json!(g.generators()));
    if let Some(name) = g.name() {
        object.insert("name".to_string(), json!(name));
    }
    Value::Object(object)
}

pub fn xmod_to_json(x: &CrossedModule) -> Value {
    let mut object = Map::new();
    object.insert("g1".to_string(), group_to_json(x.g1()));
    object.insert("g2".to_string(), group_to_json(x.g2()));
    object.insert("boundary".to_string(), json!(x.boundary().image()));
    object.insert("action".to_string(), json!(x.action().table()));
    if let Some(name) = x.name() {
        object.insert("name".to_string(), json!(name));
    }
    Value::Object(object)
}

pub fn morphism_to_json(f: &XModMorphism) -> Value {
    json!({
        "source": xmod_to_json(f.source()),
        "target": xmod_to_json(f.target()),
        "f1": f.f1().image(),
        "f2": f.f2().image(),
    })
}

pub fn sequence_to_json(s: &ExactSequence) -> Value {
    json!({
        "n": xmod_to_json(s.n()),
        "t": xmod_to_json(s.t()),
        "q": xmod_to_json(s.q()),
        "kappa": {"f1": s.kappa().f1().image(), "f2": s.kappa().f2().image()},
        "alpha": {"f1": s.alpha().f1().image(), "f2": s.alpha().f2().image()},
    })
}

pub fn input_to_json(input: &ParsedInput) -> Value {
    match input {
        ParsedInput::Group(g) => group_to_json(g),
        ParsedInput::XMod(x) => xmod_to_json(x),
        ParsedInput::Morphism(f) => morphism_to_json(f),
        ParsedInput::Sequence(s) => sequence_to_json(s),
    }
}
