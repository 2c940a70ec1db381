//! Line-oriented text format for presentations, plus a serializer that turns
//! a built category back into a presentation (its Hasse arrows and enough
//! path equalities to regenerate it).

use std::fmt;

use crate::builder::{Presentation, NULL_NAME, UNIVERSE_NAME};
use crate::category::{Category, MorId, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_sign(tok: &str) -> Option<Sign> {
    match tok {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

/// Parse the category text format:
/// `object <name> rank <int> [sign +|-]`,
/// `arrow <name> : <src> -> <dst> [sign +|-]`,
/// `equal <p1>.<p2>…<pk> = <q1>…<qm>`,
/// `option posetal`, `option no_auto_bound`; `#` starts a comment.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut p = Presentation::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ParseError { line, message };
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "option" => match tokens.get(1) {
                Some(&"posetal") if tokens.len() == 2 => p.posetal = true,
                Some(&"no_auto_bound") if tokens.len() == 2 => p.auto_bound = false,
                other => {
                    return Err(err(format!("unknown option `{}`", other.copied().unwrap_or(""))));
                }
            },
            "object" => {
                let (name, rank, sign) = match tokens.as_slice() {
                    [_, name, "rank", rank] => (name, rank, None),
                    [_, name, "rank", rank, "sign", s] => {
                        let s = parse_sign(s)
                            .ok_or_else(|| err(format!("bad sign `{s}`")))?;
                        (name, rank, Some(s))
                    }
                    _ => return Err(err("expected `object <name> rank <int> [sign +|-]`".into())),
                };
                let rank: i64 = rank
                    .parse()
                    .map_err(|_| err(format!("bad rank `{rank}`")))?;
                p.object(name, rank, sign);
            }
            "arrow" => {
                let (name, src, dst, sign) = match tokens.as_slice() {
                    [_, name, ":", src, "->", dst] => (name, src, dst, None),
                    [_, name, ":", src, "->", dst, "sign", s] => {
                        let s = parse_sign(s)
                            .ok_or_else(|| err(format!("bad sign `{s}`")))?;
                        (name, src, dst, Some(s))
                    }
                    _ => {
                        return Err(err(
                            "expected `arrow <name> : <src> -> <dst> [sign +|-]`".into(),
                        ))
                    }
                };
                p.arrow(name, src, dst, sign);
            }
            "equal" => {
                let rest: Vec<&str> = tokens[1..].to_vec();
                let eq = rest
                    .iter()
                    .position(|&t| t == "=")
                    .ok_or_else(|| err("expected `equal <path> = <path>`".into()))?;
                if eq != 1 || rest.len() != 3 {
                    return Err(err("expected `equal <path> = <path>`".into()));
                }
                let split = |s: &str| -> Vec<String> {
                    s.split('.').map(|t| t.to_string()).collect()
                };
                let (left, right) = (split(rest[0]), split(rest[2]));
                if left.iter().any(String::is_empty) || right.iter().any(String::is_empty) {
                    return Err(err("empty path segment".into()));
                }
                p.relations.push(crate::builder::Relation { left, right });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    Ok(p)
}

fn sign_suffix(sign: Option<Sign>) -> String {
    match sign {
        Some(s) => format!(" sign {s}"),
        None => String::new(),
    }
}

/// Render a presentation in the text format (declaration order preserved).
pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    if p.posetal {
        out.push_str("option posetal\n");
    }
    if !p.auto_bound {
        out.push_str("option no_auto_bound\n");
    }
    for o in &p.objects {
        out.push_str(&format!(
            "object {} rank {}{}\n",
            o.name,
            o.rank,
            sign_suffix(o.sign)
        ));
    }
    for a in &p.arrows {
        out.push_str(&format!(
            "arrow {} : {} -> {}{}\n",
            a.name,
            a.source,
            a.target,
            sign_suffix(a.sign)
        ));
    }
    for r in &p.relations {
        out.push_str(&format!(
            "equal {} = {}\n",
            r.left.join("."),
            r.right.join(".")
        ));
    }
    out
}

/// All decompositions of a non-identity morphism into nondecomposable
/// factors, written first-applied-first.
fn nondecomposable_paths(c: &Category, m: MorId) -> Vec<Vec<MorId>> {
    let proper = c.proper_factor_pairs(m);
    if proper.is_empty() {
        return vec![vec![m]];
    }
    let mut out = Vec::new();
    for (f, g) in proper {
        if !c.proper_factor_pairs(f).is_empty() {
            continue;
        }
        for mut tail in nondecomposable_paths(c, g) {
            let mut path = vec![f];
            path.append(&mut tail);
            out.push(path);
        }
    }
    out
}

/// Serialize a category as a presentation of itself: every object, one arrow
/// per nondecomposable morphism, and path equalities regenerating the
/// remaining identifications. The bounds are renamed to the reserved names
/// and `no_auto_bound` is set, so parsing the output rebuilds the category.
/// Output is deterministically sorted.
pub fn serialize_category(c: &Category) -> String {
    let obj_name = |o| {
        if o == c.initial() {
            NULL_NAME.to_string()
        } else if o == c.terminal() {
            UNIVERSE_NAME.to_string()
        } else {
            c.object(o).name.clone()
        }
    };

    let mut out = String::from("option no_auto_bound\n");
    let mut objects: Vec<_> = c.objects().collect();
    objects.sort_by_key(|&o| (c.rank(o), obj_name(o)));
    for o in objects {
        out.push_str(&format!(
            "object {} rank {}{}\n",
            obj_name(o),
            c.rank(o),
            sign_suffix(c.object(o).sign)
        ));
    }

    let mut edges = c.nondecomposable();
    edges.sort_by_key(|&m| c.morphism(m).name.clone());
    for &m in &edges {
        out.push_str(&format!(
            "arrow {} : {} -> {}{}\n",
            c.morphism(m).name,
            obj_name(c.source(m)),
            obj_name(c.target(m)),
            sign_suffix(c.sign(m))
        ));
    }

    let mut relations: Vec<String> = Vec::new();
    for m in c.morphisms() {
        if c.is_identity(m) {
            continue;
        }
        let mut paths: Vec<Vec<String>> = nondecomposable_paths(c, m)
            .into_iter()
            .map(|p| p.iter().map(|&x| c.morphism(x).name.clone()).collect())
            .collect();
        paths.sort();
        paths.dedup();
        for other in &paths[1..] {
            relations.push(format!("equal {} = {}", paths[0].join("."), other.join(".")));
        }
    }
    relations.sort();
    relations.dedup();
    for r in relations {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_category;
    use crate::iso::is_isomorphic;
    use std::sync::Arc;

    const SEGMENT: &str = "\
# a line segment
object A rank 0 sign +
object B rank 0 sign +
object L rank 1
arrow l : A -> L sign +
arrow r : B -> L sign -
";

    #[test]
    fn parse_segment() {
        let p = parse_presentation(SEGMENT).unwrap();
        assert_eq!(p.objects.len(), 3);
        assert_eq!(p.arrows.len(), 2);
        assert!(p.auto_bound);
        let c = build_category(&p).unwrap();
        assert_eq!(c.object_count(), 5);
        assert_eq!(c.morphism_count(), 14);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_presentation("object X rank 0\nobject Y\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_presentation("arrow f X -> Y\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_presentation("option nonsense\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn presentation_round_trip_is_stable() {
        let p = parse_presentation(SEGMENT).unwrap();
        let text = serialize_presentation(&p);
        let q = parse_presentation(&text).unwrap();
        assert_eq!(serialize_presentation(&q), text);
    }

    #[test]
    fn category_round_trip_is_isomorphic_and_stable() {
        let p = parse_presentation(SEGMENT).unwrap();
        let c = Arc::new(build_category(&p).unwrap());
        let text = serialize_category(&c);
        let rebuilt = Arc::new(build_category(&parse_presentation(&text).unwrap()).unwrap());
        assert!(is_isomorphic(&c, &rebuilt).is_some());
        assert_eq!(serialize_category(&rebuilt), text);
    }
}
