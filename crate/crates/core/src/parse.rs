//! Text forms of elements and points.
//!
//! An element is one of: a word (`x0 x1^-1 x0^2`), a tree pair
//! (`((**)*) | (*(**))`, domain tree first), or PLMap JSON. A point is a
//! binary expansion (`.10(01)`) or a rational `p/q`; dyadic rationals
//! resolve to the expansion ending in zeros.

use crate::binary::TailWord;
use crate::dyadic::parse_q;
use crate::error::Result;
use crate::generators::parse_word;
use crate::plmap::PLMap;
use crate::strand::StrandDiagram;
use crate::tree::parse_tree;

enum Form<'a> {
    Json(&'a str),
    Trees(&'a str, usize, &'a str, usize),
    Word(&'a str, usize),
}

fn classify(text: &str) -> Form<'_> {
    let lead = text.len() - text.trim_start().len();
    if text.trim_start().starts_with('{') {
        Form::Json(text)
    } else if let Some(bar) = text.find('|') {
        Form::Trees(&text[..bar], 0, &text[bar + 1..], bar + 1)
    } else {
        Form::Word(&text[lead..], lead)
    }
}

/// Parses an element as a map; the result is always Thompson-like.
pub fn parse_element(text: &str) -> Result<PLMap> {
    match classify(text) {
        Form::Json(s) => {
            let f = PLMap::from_json_str(s)?;
            f.require_thompson_like()?;
            Ok(f)
        }
        _ => parse_diagram(text)?.to_pl_map(),
    }
}

/// Parses an element as a diagram, unreduced where the syntax allows:
/// words give the concatenation of generator diagrams, tree pairs give the
/// pair as written, JSON gives the reduced diagram.
pub fn parse_diagram(text: &str) -> Result<StrandDiagram> {
    match classify(text) {
        Form::Json(s) => StrandDiagram::from_pl_map(&parse_element(s)?),
        Form::Trees(a, oa, b, ob) => {
            let d = parse_tree(a, oa)?;
            let r = parse_tree(b, ob)?;
            StrandDiagram::from_tree_pair(&d, &r)
        }
        Form::Word(s, off) => Ok(parse_word(s, off)?.diagram()),
    }
}

/// Parses a point of `[0, 1]`.
pub fn parse_point(text: &str) -> Result<TailWord> {
    let t = text.trim();
    if t.starts_with('.') {
        t.parse()
    } else {
        TailWord::from_rational_upper(&parse_q(t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::q;
    use crate::error::Error;
    use crate::generators::x0;

    #[test]
    fn three_grammars() {
        assert!(parse_element("x0 x0^-1").unwrap().is_identity());
        assert!(parse_element("(** ) | (**)").unwrap().is_identity());
        assert_eq!(parse_element("(*(**)) | ((**)*)").unwrap(), x0());
        let json = x0().to_json().unwrap().to_string();
        assert_eq!(parse_element(&json).unwrap(), x0());
        assert!(parse_element("").unwrap().is_identity());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_element("x0 y1").unwrap_err();
        assert_eq!(e, Error::parse(3, "unknown generator \"y1\""));
        let e = parse_element("(**) | (*x)").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 9, .. }), "{e:?}");
        assert!(parse_element("{\"domain\": 1").unwrap_err().is_parse());
        let odd = r#"{"domain":1,"range":1,"breakpoints":[["0/1","0/1"],["1/3","1/2"],["1/1","1/1"]]}"#;
        let e = parse_element(odd).unwrap_err();
        assert!(!e.is_parse());
        assert!(parse_element("(**) | *").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1/2").unwrap(), ".1(0)".parse().unwrap());
        assert_eq!(parse_point(".(01)").unwrap().to_rational(), q(1, 3));
        assert!(parse_point("3/2").is_err());
        assert!(parse_point("a/b").unwrap_err().is_parse());
    }
}
