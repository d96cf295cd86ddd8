//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! space_x.lower = -inf
//! space_x.upper = 0
//! space_y.lower = 0
//! space_y.upper = inf
//! map_f.kind = affine
//! map_f.a = 1/3
//! map_f.b = -1/4
//! map_g.kind = builtin
//! map_g.name = eighth_minus_sixth
//! class.kind = banach
//! class.k = 1/3
//! seed.x = -1
//! seed.y = 1
//! solve.tol_step = 1e-10
//! ```
//!
//! Vectors are comma separated; matrix rows are separated by `;`. Every
//! number is a decimal or a rational `p/q`. Unknown sections or keys,
//! duplicates and malformed values are rejected with their line number.

use std::collections::BTreeMap;

use fgcouple::{
    AffineMap, Builtin, ClassTag, ContractionClass, CoupledMapPair, Edge, Error, HypothesisMode,
    MapSpec, Matrix, Point, ProductPoint, Result, Scalar, SolveConfig, SpaceDescriptor,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile<S> {
    pub space_x: SpaceDescriptor<S>,
    pub space_y: SpaceDescriptor<S>,
    pub map_f: MapSpec<S>,
    pub map_g: MapSpec<S>,
    pub class: Option<ContractionClass<S>>,
    pub seed: Option<ProductPoint<S>>,
    pub solve: Option<SolveConfig<S>>,
}

impl<S: Scalar> ProblemFile<S> {
    pub fn pair(&self) -> Result<CoupledMapPair<S>> {
        CoupledMapPair::new(
            self.space_x.clone(),
            self.space_y.clone(),
            self.map_f.clone(),
            self.map_g.clone(),
        )
    }
}

const SECTIONS: [&str; 7] = ["space_x", "space_y", "map_f", "map_g", "class", "seed", "solve"];

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

/// Entries of one section, consumed as they are interpreted so that
/// leftovers can be reported as unknown keys.
#[derive(Debug, Default)]
struct Section {
    first_line: usize,
    entries: BTreeMap<String, Entry>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<Entry> {
        self.entries.remove(key)
    }

    fn require(&mut self, section: &str, key: &str) -> Result<Entry> {
        self.take(key)
            .ok_or_else(|| syntax(self.first_line, format!("missing key {section}.{key}")))
    }

    /// Fails on the earliest key not in `allowed`.
    fn only(&self, section: &str, allowed: &[&str]) -> Result<()> {
        match self
            .entries
            .iter()
            .filter(|(k, _)| !allowed.contains(&k.as_str()))
            .min_by_key(|(_, e)| e.line)
        {
            Some((key, e)) => Err(syntax(e.line, format!("unknown key {section}.{key}"))),
            None => Ok(()),
        }
    }

    fn finish(self, section: &str) -> Result<()> {
        match self.entries.into_iter().min_by_key(|(_, e)| e.line) {
            Some((key, e)) => Err(syntax(e.line, format!("unknown key {section}.{key}"))),
            None => Ok(()),
        }
    }
}

fn scalar<S: Scalar>(text: &str, line: usize) -> Result<S> {
    S::parse_literal(text.trim()).ok_or_else(|| syntax(line, format!("invalid number '{}'", text.trim())))
}

fn vector<S: Scalar>(e: &Entry) -> Result<Vec<S>> {
    if e.value.trim().is_empty() {
        return Err(syntax(e.line, "empty vector"));
    }
    e.value.split(',').map(|t| scalar(t, e.line)).collect()
}

fn matrix<S: Scalar>(e: &Entry) -> Result<Matrix<S>> {
    let rows = e
        .value
        .split(';')
        .map(|row| {
            vector(&Entry {
                value: row.to_string(),
                line: e.line,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|err| syntax(e.line, err.to_string()))
}

fn edges<S: Scalar>(e: &Entry, infinite: &[&str]) -> Result<Vec<Edge<S>>> {
    e.value
        .split(',')
        .map(|t| {
            let t = t.trim();
            if infinite.contains(&t) {
                Ok(Edge::Unbounded)
            } else {
                scalar(t, e.line).map(Edge::Finite)
            }
        })
        .collect()
}

fn boolean(e: &Entry) -> Result<bool> {
    match e.value.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(syntax(e.line, format!("expected true or false, got '{other}'"))),
    }
}

fn space<S: Scalar>(name: &str, mut sec: Section) -> Result<SpaceDescriptor<S>> {
    sec.only(name, &["lower", "upper", "degenerate"])?;
    let lower_entry = sec.require(name, "lower")?;
    let upper_entry = sec.require(name, "upper")?;
    let lower = edges(&lower_entry, &["-inf"])?;
    let upper = edges(&upper_entry, &["inf", "+inf"])?;
    let degenerate = match sec.take("degenerate") {
        Some(e) => boolean(&e)?,
        None => false,
    };
    sec.finish(name)?;
    if lower.len() != upper.len() {
        return Err(syntax(
            upper_entry.line,
            format!("{name} has {} lower and {} upper edges", lower.len(), upper.len()),
        ));
    }
    let built = if degenerate {
        SpaceDescriptor::with_degenerate_axes(lower, upper)
    } else {
        SpaceDescriptor::new(lower, upper)
    };
    built.map_err(|e| syntax(lower_entry.line, e.to_string()))
}

fn map<S: Scalar>(name: &str, mut sec: Section, own: usize, other: usize) -> Result<MapSpec<S>> {
    let kind = sec.require(name, "kind")?;
    let spec = match kind.value.trim() {
        "affine" => {
            sec.only(name, &["a", "b", "offset"])?;
            let a = matrix(&sec.require(name, "a")?)?;
            let b = matrix(&sec.require(name, "b")?)?;
            let offset = match sec.take("offset") {
                Some(e) => vector(&e)?,
                None => vec![S::zero(); own],
            };
            if a.shape() != (own, own) || b.shape() != (own, other) || offset.len() != own {
                return Err(syntax(
                    kind.line,
                    format!(
                        "{name} needs a {own}x{own}, b {own}x{other} and offset of length {own}"
                    ),
                ));
            }
            MapSpec::Affine(AffineMap::new(a, b, offset))
        }
        "builtin" => {
            sec.only(name, &["name"])?;
            let e = sec.require(name, "name")?;
            let builtin = Builtin::from_name(e.value.trim()).map_err(|err| syntax(e.line, err.to_string()))?;
            MapSpec::Builtin(builtin)
        }
        other => return Err(syntax(kind.line, format!("unknown map kind '{other}'"))),
    };
    sec.finish(name)?;
    Ok(spec)
}

fn class<S: Scalar>(mut sec: Section) -> Result<ContractionClass<S>> {
    let kind = sec.require("class", "kind")?;
    let tag = ClassTag::from_name(kind.value.trim()).map_err(|e| syntax(kind.line, e.to_string()))?;
    sec.only("class", tag.constant_names())?;
    let values = tag
        .constant_names()
        .iter()
        .map(|c| {
            let e = sec.require("class", c)?;
            scalar(&e.value, e.line)
        })
        .collect::<Result<Vec<S>>>()?;
    sec.finish("class")?;
    let class = ContractionClass::from_constants(tag, values)?;
    class.check_admissible()?;
    Ok(class)
}

fn seed<S: Scalar>(mut sec: Section, dx: usize, dy: usize) -> Result<ProductPoint<S>> {
    sec.only("seed", &["x", "y"])?;
    let xe = sec.require("seed", "x")?;
    let ye = sec.require("seed", "y")?;
    sec.finish("seed")?;
    let (x, y) = (vector(&xe)?, vector(&ye)?);
    if x.len() != dx {
        return Err(syntax(xe.line, format!("seed.x has length {} but space_x has dimension {dx}", x.len())));
    }
    if y.len() != dy {
        return Err(syntax(ye.line, format!("seed.y has length {} but space_y has dimension {dy}", y.len())));
    }
    Ok(ProductPoint::new(Point::new(x), Point::new(y)))
}

fn solve_block<S: Scalar>(mut sec: Section) -> Result<SolveConfig<S>> {
    let mut cfg = SolveConfig::<S>::default();
    if let Some(e) = sec.take("tol_step") {
        cfg.tol_step = scalar(&e.value, e.line)?;
    }
    if let Some(e) = sec.take("tol_residual") {
        cfg.tol_residual = scalar(&e.value, e.line)?;
    }
    if let Some(e) = sec.take("max_iter") {
        cfg.max_iter = e
            .value
            .trim()
            .parse()
            .map_err(|_| syntax(e.line, format!("invalid iteration count '{}'", e.value.trim())))?;
    }
    if let Some(e) = sec.take("mode") {
        cfg.mode = HypothesisMode::from_name(e.value.trim()).map_err(|err| syntax(e.line, err.to_string()))?;
    }
    let line = sec.first_line;
    sec.finish("solve")?;
    cfg.validate().map_err(|e| syntax(line, e.to_string()))?;
    Ok(cfg)
}

/// Parses and validates a problem file.
pub fn parse_problem<S: Scalar>(text: &str) -> Result<ProblemFile<S>> {
    let mut sections: BTreeMap<&str, Section> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(line, "expected 'section.key = value'"))?;
        let (sec_name, key) = lhs
            .trim()
            .split_once('.')
            .ok_or_else(|| syntax(line, format!("expected 'section.key', got '{}'", lhs.trim())))?;
        let sec_name = SECTIONS
            .iter()
            .find(|s| **s == sec_name)
            .ok_or_else(|| syntax(line, format!("unknown section '{sec_name}'")))?;
        let key = key.trim();
        if key.is_empty() || value.trim().is_empty() {
            return Err(syntax(line, "empty key or value"));
        }
        let section = sections.entry(sec_name).or_insert_with(|| Section {
            first_line: line,
            ..Section::default()
        });
        let entry = Entry {
            value: value.trim().to_string(),
            line,
        };
        if section.entries.insert(key.to_string(), entry).is_some() {
            return Err(syntax(line, format!("duplicate key {sec_name}.{key}")));
        }
    }
    if sections.is_empty() {
        return Err(syntax(1, "problem file is empty"));
    }
    let mut take = |name: &str| sections.remove(name);
    let missing = |name: &str| syntax(1, format!("missing section {name}"));

    let space_x = space("space_x", take("space_x").ok_or_else(|| missing("space_x"))?)?;
    let space_y = space("space_y", take("space_y").ok_or_else(|| missing("space_y"))?)?;
    let (dx, dy) = (space_x.dim(), space_y.dim());
    let map_f = map("map_f", take("map_f").ok_or_else(|| missing("map_f"))?, dx, dy)?;
    let map_g = map("map_g", take("map_g").ok_or_else(|| missing("map_g"))?, dy, dx)?;
    let class = take("class").map(class).transpose()?;
    let seed = take("seed").map(|s| seed(s, dx, dy)).transpose()?;
    let solve = take("solve").map(solve_block).transpose()?;

    let problem = ProblemFile {
        space_x,
        space_y,
        map_f,
        map_g,
        class,
        seed,
        solve,
    };
    problem.pair()?;
    Ok(problem)
}

fn join<S: Scalar>(values: &[S]) -> String {
    values.iter().map(S::to_literal).collect::<Vec<_>>().join(", ")
}

fn emit_matrix<S: Scalar>(m: &Matrix<S>) -> String {
    m.to_rows().iter().map(|r| join(r)).collect::<Vec<_>>().join("; ")
}

fn emit_edges<S: Scalar>(edges: &[Edge<S>], infinite: &str) -> String {
    edges
        .iter()
        .map(|e| match e {
            Edge::Finite(v) => v.to_literal(),
            Edge::Unbounded => infinite.to_string(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Serializes a problem so that [`parse_problem`] returns an equal value.
pub fn emit_problem<S: Scalar>(p: &ProblemFile<S>) -> String {
    let mut out = String::new();
    let mut put = |key: &str, value: String| {
        out.push_str(key);
        out.push_str(" = ");
        out.push_str(&value);
        out.push('\n');
    };
    for (name, sp) in [("space_x", &p.space_x), ("space_y", &p.space_y)] {
        put(&format!("{name}.lower"), emit_edges(sp.lower(), "-inf"));
        put(&format!("{name}.upper"), emit_edges(sp.upper(), "inf"));
        if sp.allows_degenerate() {
            put(&format!("{name}.degenerate"), "true".to_string());
        }
    }
    for (name, m) in [("map_f", &p.map_f), ("map_g", &p.map_g)] {
        match m {
            MapSpec::Affine(a) => {
                put(&format!("{name}.kind"), "affine".to_string());
                put(&format!("{name}.a"), emit_matrix(&a.a));
                put(&format!("{name}.b"), emit_matrix(&a.b));
                put(&format!("{name}.offset"), join(&a.offset));
            }
            MapSpec::Builtin(b) => {
                put(&format!("{name}.kind"), "builtin".to_string());
                put(&format!("{name}.name"), b.name().to_string());
            }
        }
    }
    if let Some(c) = &p.class {
        put("class.kind", c.tag().name().to_string());
        for (name, v) in c.tag().constant_names().iter().zip(c.constants()) {
            put(&format!("class.{name}"), v.to_literal());
        }
    }
    if let Some(s) = &p.seed {
        put("seed.x", join(s.x.coords()));
        put("seed.y", join(s.y.coords()));
    }
    if let Some(s) = &p.solve {
        put("solve.tol_step", s.tol_step.to_literal());
        put("solve.tol_residual", s.tol_residual.to_literal());
        put("solve.max_iter", s.max_iter.to_string());
        put("solve.mode", s.mode.name().to_string());
    }
    out
}
