//! Line-oriented text format for presentations and germs.
//!
//! ```text
//! # braid monoid on three strands
//! gens: a b
//! rels: a b a = b a b
//! ```
//!
//! Sections start with `objects:`, `gens:`, `rels:`, `noetherian:`, or for
//! germs `germ:`, `elements:`, `identity:`, `products:`. Lines that start
//! with no keyword continue the current section. Generators and elements
//! are plain names on a one-object input, `name: src -> tgt` otherwise.
//! Germ products are written `x * y = z`. `#` starts a comment.

use std::fmt;

use garside::core::MONOID_OBJECT;
use garside::{Alphabet, Germ, NoetherianEvidence, Path, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Presentation(Presentation),
    Germ(Germ),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line, 0 when the error is not tied to one line.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

const KEYWORDS: [&str; 8] = ["objects", "gens", "rels", "noetherian", "germ", "elements", "identity", "products"];

/// One item of a section, with the line it came from.
type Item = (usize, String);

#[derive(Default)]
struct Sections {
    objects: Vec<Item>,
    gens: Vec<Item>,
    rels: Vec<Item>,
    noetherian: Vec<Item>,
    germ: Option<usize>,
    elements: Vec<Item>,
    identity: Vec<Item>,
    products: Vec<Item>,
}

impl Sections {
    fn slot(&mut self, key: &str) -> &mut Vec<Item> {
        match key {
            "objects" => &mut self.objects,
            "gens" => &mut self.gens,
            "rels" => &mut self.rels,
            "noetherian" => &mut self.noetherian,
            "elements" => &mut self.elements,
            "identity" => &mut self.identity,
            _ => &mut self.products,
        }
    }
}

fn split_sections(text: &str) -> Result<Sections, ParseError> {
    let mut out = Sections::default();
    let mut current: Option<&str> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut rest = line;
        if let Some((head, tail)) = line.split_once(':') {
            if let Some(&kw) = KEYWORDS.iter().find(|&&k| k == head.trim()) {
                current = Some(kw);
                rest = tail.trim();
                if kw == "germ" {
                    if out.germ.is_some() {
                        return Err(err(line_no, "second `germ:` header"));
                    }
                    out.germ = Some(line_no);
                    if !rest.is_empty() {
                        return Err(err(line_no, "`germ:` takes no arguments"));
                    }
                    continue;
                }
            }
        }
        // Product lines are recognised anywhere inside a germ.
        if out.germ.is_some() && rest.contains('*') {
            out.products.push((line_no, rest.to_string()));
            continue;
        }
        let Some(kw) = current else {
            return Err(err(line_no, format!("expected a section keyword, found `{line}`")));
        };
        if kw == "germ" {
            return Err(err(line_no, format!("unexpected `{rest}` after `germ:`")));
        }
        if !rest.is_empty() {
            out.slot(kw).push((line_no, rest.to_string()));
        }
    }
    Ok(out)
}

/// Entries separated by commas, each either `name: src -> tgt` or a run of
/// plain names.
enum Decl {
    Plain(String),
    Typed(String, String, String),
}

fn declarations(items: &[Item]) -> Result<Vec<(usize, Decl)>, ParseError> {
    let mut out = Vec::new();
    for (line, text) in items {
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some((name, arrow)) = part.split_once(':') {
                let (s, t) = arrow
                    .split_once("->")
                    .ok_or_else(|| err(*line, format!("expected `name: src -> tgt`, found `{part}`")))?;
                let (name, s, t) = (name.trim(), s.trim(), t.trim());
                if [name, s, t].iter().any(|x| x.is_empty() || x.contains(char::is_whitespace)) {
                    return Err(err(*line, format!("malformed declaration `{part}`")));
                }
                out.push((*line, Decl::Typed(name.into(), s.into(), t.into())));
            } else {
                out.extend(part.split_whitespace().map(|n| (*line, Decl::Plain(n.to_string()))));
            }
        }
    }
    Ok(out)
}

fn object_names(items: &[Item]) -> Vec<(usize, String)> {
    items
        .iter()
        .flat_map(|(l, t)| {
            t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(|x| (*l, x.to_string()))
        })
        .collect()
}

/// Resolves declarations to `(name, src, tgt)` triples. Plain names need a
/// single object.
fn typed(decls: Vec<(usize, Decl)>, objects: &[String]) -> Result<Vec<(usize, String, String, String)>, ParseError> {
    decls
        .into_iter()
        .map(|(line, d)| match d {
            Decl::Typed(n, s, t) => Ok((line, n, s, t)),
            Decl::Plain(n) if objects.len() == 1 => Ok((line, n, objects[0].clone(), objects[0].clone())),
            Decl::Plain(n) => Err(err(line, format!("`{n}` needs `: src -> tgt` when there are several objects"))),
        })
        .collect()
}

pub fn parse_input(text: &str) -> Result<Source, ParseError> {
    let sec = split_sections(text)?;
    let mut objects: Vec<String> = object_names(&sec.objects).into_iter().map(|(_, o)| o).collect();
    let declared = !objects.is_empty();
    if !declared {
        objects.push(MONOID_OBJECT.to_string());
    }
    match sec.germ {
        Some(line) => {
            if let Some((l, _)) = sec.gens.first().or(sec.rels.first()).or(sec.noetherian.first()) {
                return Err(err(*l, "presentation sections are not allowed in a germ"));
            }
            parse_germ(&sec, &objects, line).map(Source::Germ)
        }
        None => {
            if let Some((l, _)) = sec.elements.first().or(sec.identity.first()).or(sec.products.first()) {
                return Err(err(*l, "germ sections need a `germ:` header"));
            }
            parse_presentation(&sec, &objects).map(Source::Presentation)
        }
    }
}

fn parse_presentation(sec: &Sections, objects: &[String]) -> Result<Presentation, ParseError> {
    let mut alpha = Alphabet::new();
    for o in objects {
        alpha.add_object(o).map_err(|e| err(sec.objects.first().map_or(0, |x| x.0), e.to_string()))?;
    }
    let gens = typed(declarations(&sec.gens)?, objects)?;
    if gens.is_empty() {
        return Err(err(0, "no generators (`gens:`)"));
    }
    for (line, n, s, t) in &gens {
        let lib = |e: garside::Error| err(*line, e.to_string());
        let (s, t) = (alpha.object(s).map_err(lib)?, alpha.object(t).map_err(lib)?);
        alpha.add_letter(n, s, t).map_err(lib)?;
    }
    let mut rels: Vec<(Path, Path)> = Vec::new();
    for (line, text) in &sec.rels {
        for rel in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let sides: Vec<&str> = rel.split('=').collect();
            if sides.len() != 2 {
                return Err(err(*line, format!("a relation has exactly one `=`: `{rel}`")));
            }
            let lib = |e: garside::Error| err(*line, e.to_string());
            let (u, v) = (alpha.parse_path(sides[0]).map_err(lib)?, alpha.parse_path(sides[1]).map_err(lib)?);
            rels.push((u, v));
        }
    }
    let line = sec.rels.first().map_or(0, |x| x.0);
    let mut p = Presentation::new(alpha, rels).map_err(|e| err(line, e.to_string()))?;
    if let Some((line, text)) = sec.noetherian.first() {
        let kind = match text.as_str() {
            "asserted" => NoetherianEvidence::UserAsserted,
            "weight" => NoetherianEvidence::WeightMap,
            other => return Err(err(*line, format!("expected `asserted` or `weight`, found `{other}`"))),
        };
        p = p.assert_noetherian(kind);
    }
    Ok(p)
}

fn parse_germ(sec: &Sections, objects: &[String], header: usize) -> Result<Germ, ParseError> {
    let elements = typed(declarations(&sec.elements)?, objects)?;
    if elements.is_empty() {
        return Err(err(header, "a germ needs an `elements:` section"));
    }
    let mut identities: Vec<(String, String)> = Vec::new();
    for (line, text) in &sec.identity {
        let toks: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).collect();
        match toks.as_slice() {
            [e] if objects.len() == 1 => identities.push((objects[0].clone(), e.to_string())),
            [o, e] => identities.push((o.to_string(), e.to_string())),
            _ => return Err(err(*line, format!("expected `identity: [object] element`, found `{text}`"))),
        }
    }
    let mut products: Vec<(String, String, String)> = Vec::new();
    for (line, text) in &sec.products {
        let bad = || err(*line, format!("expected `x * y = z`, found `{text}`"));
        let (lhs, z) = text.split_once('=').ok_or_else(bad)?;
        let (x, y) = lhs.split_once('*').ok_or_else(bad)?;
        let parts = [x.trim(), y.trim(), z.trim()];
        if parts.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace) || p.contains(['*', '='])) {
            return Err(bad());
        }
        products.push((parts[0].into(), parts[1].into(), parts[2].into()));
    }
    let objs: Vec<&str> = objects.iter().map(String::as_str).collect();
    let els: Vec<(&str, &str, &str)> =
        elements.iter().map(|(_, n, s, t)| (n.as_str(), s.as_str(), t.as_str())).collect();
    let ids: Vec<(&str, &str)> = identities.iter().map(|(o, e)| (o.as_str(), e.as_str())).collect();
    let prods: Vec<(&str, &str, &str)> =
        products.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    let germ = Germ::new(&objs, &els, &ids, &prods).map_err(|e| err(header, e.to_string()))?;
    germ.validate().map_err(|v| err(header, format!("not a germ: {v}")))?;
    Ok(germ)
}

/// Canonical text for a source; `parse_input(&render(s)) == s`.
pub fn render(source: &Source) -> String {
    match source {
        Source::Presentation(p) => render_presentation(p),
        Source::Germ(g) => render_germ(g),
    }
}

fn implicit_objects(names: &[String]) -> bool {
    names.len() == 1 && names[0] == MONOID_OBJECT
}

fn render_presentation(p: &Presentation) -> String {
    let al = p.alphabet();
    let objects: Vec<String> = al.objects().map(|x| al.object_name(x).to_string()).collect();
    let mut out = String::new();
    if implicit_objects(&objects) {
        let names: Vec<&str> = al.letters().map(|l| al.name(l)).collect();
        out.push_str(&format!("gens: {}\n", names.join(" ")));
    } else {
        out.push_str(&format!("objects: {}\ngens:\n", objects.join(" ")));
        for l in al.letters() {
            out.push_str(&format!(
                "  {}: {} -> {}\n",
                al.name(l),
                al.object_name(al.src(l)),
                al.object_name(al.tgt(l))
            ));
        }
    }
    if !p.relations().is_empty() {
        out.push_str("rels:\n");
        for (u, v) in p.relations() {
            out.push_str(&format!("  {} = {}\n", al.show_path(u), al.show_path(v)));
        }
    }
    match p.asserted() {
        Some(NoetherianEvidence::UserAsserted) => out.push_str("noetherian: asserted\n"),
        Some(NoetherianEvidence::WeightMap) => out.push_str("noetherian: weight\n"),
        _ => {}
    }
    out
}

fn render_germ(g: &Germ) -> String {
    let objects = g.objects().to_vec();
    let mut out = String::from("germ:\n");
    let one = implicit_objects(&objects);
    if one {
        let names: Vec<&str> = (0..g.len()).map(|e| g.name(e)).collect();
        out.push_str(&format!("elements: {}\nidentity: {}\n", names.join(" "), g.name(g.identity(0))));
    } else {
        out.push_str(&format!("objects: {}\nelements:\n", objects.join(" ")));
        for e in 0..g.len() {
            out.push_str(&format!("  {}: {} -> {}\n", g.name(e), objects[g.src(e)], objects[g.tgt(e)]));
        }
        for (x, o) in objects.iter().enumerate() {
            out.push_str(&format!("identity: {o} {}\n", g.name(g.identity(x))));
        }
    }
    let mut products = Vec::new();
    for a in g.non_identities() {
        for b in g.non_identities() {
            if let Some(c) = g.product(a, b) {
                products.push(format!("  {} * {} = {}\n", g.name(a), g.name(b), g.name(c)));
            }
        }
    }
    if !products.is_empty() {
        out.push_str("products:\n");
        out.extend(products);
    }
    out
}
