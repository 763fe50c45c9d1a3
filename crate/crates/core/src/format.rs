//! Text formats for quivers, subcoalgebra generators, relations, and
//! comodule coactions, plus JSON serialization of results.
//!
//! Files are line based; `#` starts a comment and blank lines are skipped.
//! Element syntax composes arrow names right to left, so `beta*alpha` is
//! "first alpha, then beta", and `e_v` is the trivial path at `v`.
//! Coefficients are exact rationals like `3` or `-5/2`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num::BigRational;
use serde_json::{json, Value};

use crate::coalgebra::GradedSubcoalgebra;
use crate::error::Error;
use crate::linalg::{PathVector, Subspace};
use crate::quiver::{Path, Quiver};

/// Lines with their 1-based numbers, comments stripped, blanks removed.
fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parses `vertex` and `arrow` statements into a quiver.
///
/// ```text
/// vertex x1 x2
/// arrow alpha : x1 -> x2
/// ```
pub fn parse_quiver_text(src: &str) -> Result<Arc<Quiver>, Error> {
    let mut builder = Quiver::builder();
    for (line_no, line) in content_lines(src) {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("vertex") => {
                let mut any = false;
                for name in words {
                    builder = builder.vertex(name);
                    any = true;
                }
                if !any {
                    return Err(Error::parse(line_no, 1, "vertex statement without names"));
                }
            }
            Some("arrow") => {
                builder = parse_arrow_statement(builder, line_no, line)?;
            }
            Some(word) => {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("unexpected statement `{word}` in a quiver file"),
                ));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    builder.build().map(Arc::new)
}

fn parse_arrow_statement(
    builder: crate::quiver::QuiverBuilder,
    line_no: usize,
    line: &str,
) -> Result<crate::quiver::QuiverBuilder, Error> {
    // arrow <name> : <source> -> <target>
    let rest = line.trim_start_matches("arrow").trim();
    let (name, endpoints) = rest.split_once(':').ok_or_else(|| {
        Error::parse(line_no, 1, "arrow statement needs `name : source -> target`")
    })?;
    let (source, target) = endpoints.split_once("->").ok_or_else(|| {
        Error::parse(line_no, 1, "arrow statement needs `source -> target`")
    })?;
    let (name, source, target) = (name.trim(), source.trim(), target.trim());
    if name.is_empty() || source.is_empty() || target.is_empty() {
        return Err(Error::parse(line_no, 1, "arrow statement has empty fields"));
    }
    Ok(builder.arrow(name, source, target))
}

/// A parsed subcoalgebra description: the quiver, the generator elements,
/// and the truncation bound.
pub struct CoalgebraFile {
    pub quiver: Arc<Quiver>,
    pub max_len: usize,
    pub generators: Vec<PathVector>,
}

/// Parses a self-contained subcoalgebra file: quiver statements, one
/// `maxlen`, and any number of `generator <element>` lines.
pub fn parse_coalgebra_text(src: &str) -> Result<CoalgebraFile, Error> {
    let mut builder = Some(Quiver::builder());
    let mut max_len: Option<usize> = None;
    let mut generator_lines: Vec<(usize, String)> = Vec::new();
    for (line_no, line) in content_lines(src) {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("vertex") => {
                let mut b = builder.take().expect("builder present until build");
                for name in words {
                    b = b.vertex(name);
                }
                builder = Some(b);
            }
            Some("arrow") => {
                let b = builder.take().expect("builder present until build");
                builder = Some(parse_arrow_statement(b, line_no, line)?);
            }
            Some("maxlen") => {
                let value = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(line_no, 1, "maxlen needs a number"))?;
                max_len = Some(value);
            }
            Some("generator") => {
                let expr = line.trim_start_matches("generator").trim().to_string();
                if expr.is_empty() {
                    return Err(Error::parse(line_no, 1, "generator without an element"));
                }
                generator_lines.push((line_no, expr));
            }
            Some(word) => {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("unexpected statement `{word}` in a coalgebra file"),
                ));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    let quiver = Arc::new(builder.take().expect("builder present").build()?);
    let max_len = max_len.ok_or_else(|| Error::parse(0, 0, "missing maxlen statement"))?;
    let mut generators = Vec::new();
    for (line_no, expr) in generator_lines {
        generators.push(parse_element(&quiver, &expr, line_no)?);
    }
    Ok(CoalgebraFile {
        quiver,
        max_len,
        generators,
    })
}

/// Parses `relation <element>` lines against an existing quiver.
pub fn parse_relations_text(quiver: &Quiver, src: &str) -> Result<Vec<PathVector>, Error> {
    let mut out = Vec::new();
    for (line_no, line) in content_lines(src) {
        let Some(expr) = line.strip_prefix("relation") else {
            return Err(Error::parse(
                line_no,
                1,
                "relations files contain only `relation <element>` lines",
            ));
        };
        let expr = expr.trim();
        if expr.is_empty() {
            return Err(Error::parse(line_no, 1, "relation without an element"));
        }
        out.push(parse_element(quiver, expr, line_no)?);
    }
    Ok(out)
}

/// Parses a coaction table: `dim <n>` then `rho <i> : <j> <element> ; ...`
/// with 1-based basis indices.
pub fn parse_comodule_text(
    quiver: &Quiver,
    src: &str,
) -> Result<Vec<Vec<(usize, PathVector)>>, Error> {
    let mut dim: Option<usize> = None;
    let mut rows: BTreeMap<usize, Vec<(usize, PathVector)>> = BTreeMap::new();
    for (line_no, line) in content_lines(src) {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("dim") => {
                let value = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(line_no, 1, "dim needs a number"))?;
                dim = Some(value);
            }
            Some("rho") => {
                let rest = line.trim_start_matches("rho").trim();
                let (index, entries) = rest.split_once(':').ok_or_else(|| {
                    Error::parse(line_no, 1, "rho line needs `rho <i> : <entries>`")
                })?;
                let i: usize = index.trim().parse().map_err(|_| {
                    Error::parse(line_no, 1, "rho index must be a positive number")
                })?;
                if i == 0 {
                    return Err(Error::parse(line_no, 1, "rho indices are 1-based"));
                }
                let mut parsed = Vec::new();
                for piece in entries.split(';') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    let (j_text, element) = piece.split_once(char::is_whitespace).ok_or_else(
                        || Error::parse(line_no, 1, "coaction entry needs `<j> <element>`"),
                    )?;
                    let j: usize = j_text.trim().parse().map_err(|_| {
                        Error::parse(line_no, 1, "coaction entry index must be a number")
                    })?;
                    if j == 0 {
                        return Err(Error::parse(line_no, 1, "coaction indices are 1-based"));
                    }
                    parsed.push((j - 1, parse_element(quiver, element.trim(), line_no)?));
                }
                if rows.insert(i - 1, parsed).is_some() {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("duplicate rho line for index {i}"),
                    ));
                }
            }
            Some(word) => {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("unexpected statement `{word}` in a comodule file"),
                ));
            }
            None => unreachable!("blank lines are filtered"),
        }
    }
    let dim = dim.ok_or_else(|| Error::parse(0, 0, "missing dim statement"))?;
    let mut coaction = vec![Vec::new(); dim];
    for (i, row) in rows {
        if i >= dim {
            return Err(Error::parse(
                0,
                0,
                format!("rho index {} exceeds dim {dim}", i + 1),
            ));
        }
        coaction[i] = row;
    }
    Ok(coaction)
}

/// Parses one element: terms joined by `+`/`-`, each an optional rational
/// coefficient and a right-to-left chain of arrow names, or a trivial path
/// `e_<vertex>`.
pub fn parse_element(quiver: &Quiver, text: &str, line_no: usize) -> Result<PathVector, Error> {
    let mut out = PathVector::zero();
    let chars: Vec<char> = text.chars().collect();
    let flush = |start: usize, end: usize, sign: &BigRational, out: &mut PathVector| -> Result<(), Error> {
        let term: String = chars[start..end].iter().collect();
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::parse(line_no, start + 1, "empty term"));
        }
        let (path, coeff) = parse_term(quiver, term, line_no, start + 1)?;
        out.add_term(path, coeff * sign);
        Ok(())
    };
    let mut term_start = 0usize;
    let mut sign = BigRational::from_integer(1.into());
    let mut have_sign = false;
    let mut flushed = false;
    for pos in 0..chars.len() {
        if chars[pos] != '+' && chars[pos] != '-' {
            continue;
        }
        let region_blank = chars[term_start..pos].iter().all(|c| c.is_whitespace());
        if region_blank {
            // Only one leading sign before the first term is allowed.
            if flushed || have_sign {
                return Err(Error::parse(line_no, pos + 1, "doubled sign"));
            }
        } else {
            flush(term_start, pos, &sign, &mut out)?;
            flushed = true;
        }
        sign = if chars[pos] == '-' {
            BigRational::from_integer((-1).into())
        } else {
            BigRational::from_integer(1.into())
        };
        have_sign = true;
        term_start = pos + 1;
    }
    flush(term_start, chars.len(), &sign, &mut out)?;
    Ok(out)
}

/// One term: numeric factors multiply into the coefficient, identifier
/// factors name arrows right to left.
fn parse_term(
    quiver: &Quiver,
    term: &str,
    line_no: usize,
    column: usize,
) -> Result<(Path, BigRational), Error> {
    let mut coeff = BigRational::from_integer(1.into());
    let mut names: Vec<&str> = Vec::new();
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::parse(line_no, column, "empty factor"));
        }
        if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            if !names.is_empty() {
                return Err(Error::parse(
                    line_no,
                    column,
                    "coefficients go before arrow names",
                ));
            }
            let value = BigRational::from_str(factor).map_err(|_| {
                Error::parse(line_no, column, format!("bad coefficient `{factor}`"))
            })?;
            coeff *= value;
        } else {
            names.push(factor);
        }
    }
    if names.is_empty() {
        return Err(Error::parse(line_no, column, "term has no path"));
    }
    if names.len() == 1 {
        if let Some(vertex_name) = names[0].strip_prefix("e_") {
            let v = quiver.vertex_by_name(vertex_name).ok_or_else(|| {
                Error::parse(
                    line_no,
                    column,
                    format!("unknown vertex `{vertex_name}`"),
                )
            })?;
            return Ok((Path::trivial(v), coeff));
        }
    }
    let mut arrows = Vec::with_capacity(names.len());
    for name in names.iter().rev() {
        let a = quiver.arrow_by_name(name).ok_or_else(|| {
            Error::parse(line_no, column, format!("unknown arrow `{name}`"))
        })?;
        arrows.push(a);
    }
    let path = quiver.path_from_arrows(&arrows).map_err(|e| match e {
        Error::NonComposable { at, arrow } => Error::parse(
            line_no,
            column,
            format!("arrows do not compose at `{at}` before `{arrow}`"),
        ),
        other => other,
    })?;
    Ok((path, coeff))
}

/// Quiver statements in the same syntax the parser accepts.
pub fn quiver_to_text(quiver: &Quiver) -> String {
    let mut out = String::new();
    let names: Vec<&str> = quiver.vertices().map(|v| quiver.vertex_name(v)).collect();
    out.push_str("vertex ");
    out.push_str(&names.join(" "));
    out.push('\n');
    for a in quiver.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            quiver.arrow_name(a),
            quiver.vertex_name(quiver.source(a)),
            quiver.vertex_name(quiver.target(a)),
        ));
    }
    out
}

pub fn quiver_json(quiver: &Quiver) -> Value {
    json!({
        "vertices": quiver.vertices().map(|v| quiver.vertex_name(v)).collect::<Vec<_>>(),
        "arrows": quiver.arrows().map(|a| json!({
            "name": quiver.arrow_name(a),
            "source": quiver.vertex_name(quiver.source(a)),
            "target": quiver.vertex_name(quiver.target(a)),
        })).collect::<Vec<_>>(),
    })
}

/// A path as its endpoints, its arrows in traversal order, and its display
/// form.
pub fn path_json(quiver: &Quiver, p: &Path) -> Value {
    json!({
        "source": quiver.vertex_name(p.source()),
        "target": quiver.vertex_name(p.target()),
        "arrows": p.arrows().iter().map(|a| quiver.arrow_name(*a)).collect::<Vec<_>>(),
        "display": p.display(quiver).to_string(),
    })
}

/// An element as exact coefficient strings over displayed paths.
pub fn element_json(quiver: &Quiver, v: &PathVector) -> Value {
    json!({
        "terms": v.iter().map(|(p, c)| json!({
            "coeff": c.to_string(),
            "path": path_json(quiver, p),
        })).collect::<Vec<_>>(),
        "display": v.display(quiver).to_string(),
    })
}

pub fn subspace_json(quiver: &Quiver, s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "rows": s.rows().iter().map(|r| element_json(quiver, r)).collect::<Vec<_>>(),
        "pivots": s.pivot_paths().iter().map(|p| p.display(quiver).to_string()).collect::<Vec<_>>(),
    })
}

pub fn coalgebra_json(c: &GradedSubcoalgebra) -> Value {
    let quiver = c.quiver();
    json!({
        "vertices": c.vertices().iter().map(|v| quiver.vertex_name(*v)).collect::<Vec<_>>(),
        "max_len": c.max_len(),
        "admissible": c.admissible(),
        "total_dim": c.total_dim(),
        "components": c.components().map(|((a, b), s)| json!({
            "source": quiver.vertex_name(*a),
            "target": quiver.vertex_name(*b),
            "space": subspace_json(quiver, s),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn diamond_text() -> &'static str {
        "# a square of arrows\n\
         vertex x1 x2 x3 x4\n\
         arrow alpha1 : x1 -> x2\n\
         arrow alpha2 : x2 -> x4\n\
         arrow alpha3 : x1 -> x3\n\
         arrow alpha4 : x3 -> x4\n"
    }

    #[test]
    fn quiver_files_round_trip() {
        let q = parse_quiver_text(diamond_text()).unwrap();
        assert_eq!(q.vertex_count(), 4);
        assert_eq!(q.arrow_count(), 4);
        let again = parse_quiver_text(&quiver_to_text(&q)).unwrap();
        assert_eq!(q, again);
    }

    #[test]
    fn elements_parse_in_display_order() {
        let q = parse_quiver_text(diamond_text()).unwrap();
        let v = parse_element(&q, "alpha2*alpha1 + alpha4*alpha3", 1).unwrap();
        assert_eq!(v.term_count(), 2);
        assert_eq!(v.display(&q).to_string(), "alpha2*alpha1 + alpha4*alpha3");
        let w = parse_element(&q, "-3/2*alpha1 + e_x2", 1).unwrap();
        let alpha1 = q.arrow_path(q.arrow_by_name("alpha1").unwrap());
        assert_eq!(w.coeff(&alpha1), rational(-3, 2));
        // Parsing the display form recovers the element.
        let again = parse_element(&q, &w.display(&q).to_string(), 1).unwrap();
        assert_eq!(w, again);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let q = parse_quiver_text(diamond_text()).unwrap();
        let err = parse_element(&q, "alpha1*alpha2", 7).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 7),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(parse_element(&q, "alpha1 ++ alpha3", 1).is_err());
        assert!(parse_element(&q, "2*3", 1).is_err());
        assert!(parse_element(&q, "alpha1*e_x1*alpha1", 1).is_err());
        assert!(parse_element(&q, "", 1).is_err());
    }

    #[test]
    fn coalgebra_files_parse() {
        let text = format!("{}maxlen 2\ngenerator alpha2*alpha1 + alpha4*alpha3\n", diamond_text());
        let file = parse_coalgebra_text(&text).unwrap();
        assert_eq!(file.max_len, 2);
        assert_eq!(file.generators.len(), 1);
        assert!(parse_coalgebra_text(diamond_text()).is_err());
    }

    #[test]
    fn comodule_files_parse() {
        let q = parse_quiver_text(diamond_text()).unwrap();
        let text = "dim 2\nrho 1 : 1 e_x4\nrho 2 : 1 alpha2 ; 2 e_x2\n";
        let rows = parse_comodule_text(&q, text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].len(), 2);
        assert!(parse_comodule_text(&q, "rho 1 : 1 e_x4\n").is_err());
        assert!(parse_comodule_text(&q, "dim 1\nrho 2 : 1 e_x4\n").is_err());
    }

    #[test]
    fn relations_files_parse() {
        let q = parse_quiver_text(diamond_text()).unwrap();
        let rels =
            parse_relations_text(&q, "relation alpha2*alpha1 - alpha4*alpha3\n").unwrap();
        assert_eq!(rels.len(), 1);
        assert!(parse_relations_text(&q, "generator alpha1\n").is_err());
    }
}
