//! Bracketed term language for scaled types.
//!
//! `τ(...)` is an infinite root over its children, `(τκ)(...)` a finite root
//! with its items, `κ(...)` a transition vertex with its items. Below an
//! infinite vertex a bare `(...)` is another infinite vertex; below anything
//! else it is a zero vertex. Items are markings `z1, z2, ...` and child
//! vertices, separated by whitespace. An affine type is written as the
//! sequence of root children (infinite root) or as a single `κ(...)`
//! (transition root); `z0` is implicit. ASCII `tau` and `kappa` are accepted
//! on input.

use super::{CurveError, Label, Mode, ScaledType, Vertex};

fn items(v: &Vertex) -> String {
    let mut parts: Vec<(u32, String)> = v
        .markings
        .iter()
        .filter(|&&m| m != 0)
        .map(|&m| (m, format!("z{m}")))
        .collect();
    parts.extend(
        v.children
            .iter()
            .map(|c| (c.min_marking().unwrap_or(u32::MAX), vertex_term(c))),
    );
    parts.sort();
    parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join(" ")
}

pub(super) fn vertex_term(v: &Vertex) -> String {
    match v.label {
        Label::FiniteRoot => format!("(τκ)({})", items(v)),
        Label::InfiniteRoot => format!("τ({})", items(v)),
        Label::Transition => format!("κ({})", items(v)),
        Label::Zero | Label::Infinite => format!("({})", items(v)),
    }
}

pub(super) fn type_term(t: &ScaledType) -> String {
    match (t.mode, t.root.label) {
        (Mode::Affine, Label::Infinite) => items(&t.root),
        _ => vertex_term(&t.root),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Tau,
    Kappa,
    Open,
    Close,
    Mark(u32),
}

fn tokenize(text: &str) -> Result<Vec<Token>, CurveError> {
    let text = text.replace("kappa", "κ").replace("tau", "τ");
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() => i += 1,
            'τ' => {
                out.push(Token::Tau);
                i += 1;
            }
            'κ' => {
                out.push(Token::Kappa);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            'z' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[start..j].iter().collect();
                let m = digits
                    .parse()
                    .map_err(|_| CurveError::Parse(format!("bad marking at position {i}")))?;
                out.push(Token::Mark(m));
                i = j;
            }
            c => return Err(CurveError::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Token) -> Result<(), CurveError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CurveError::Parse(format!("expected {t:?} at token {}", self.pos)))
        }
    }

    /// Items up to a closing parenthesis (not consumed), in a context where
    /// bare groups are zero vertices.
    fn finite_items(&mut self, v: &mut Vertex) -> Result<(), CurveError> {
        loop {
            match self.peek() {
                Some(Token::Mark(m)) => {
                    let m = *m;
                    if m == 0 || !v.markings.insert(m) {
                        return Err(CurveError::Parse(format!("marking z{m} invalid or repeated")));
                    }
                    self.pos += 1;
                }
                Some(Token::Open) => {
                    self.pos += 1;
                    let mut child = Vertex::leaf(Label::Zero, []);
                    self.finite_items(&mut child)?;
                    self.expect(Token::Close)?;
                    v.children.push(child);
                }
                Some(Token::Close) | None => return Ok(()),
                Some(t) => return Err(CurveError::Parse(format!("unexpected {t:?} among finite items"))),
            }
        }
    }

    /// Children of an infinite vertex, up to a closing parenthesis or the end.
    fn infinite_items(&mut self, v: &mut Vertex) -> Result<(), CurveError> {
        loop {
            match self.peek() {
                Some(Token::Kappa) => {
                    self.pos += 1;
                    self.expect(Token::Open)?;
                    let mut child = Vertex::leaf(Label::Transition, []);
                    self.finite_items(&mut child)?;
                    self.expect(Token::Close)?;
                    v.children.push(child);
                }
                Some(Token::Open) => {
                    self.pos += 1;
                    let mut child = Vertex::leaf(Label::Infinite, []);
                    self.infinite_items(&mut child)?;
                    self.expect(Token::Close)?;
                    v.children.push(child);
                }
                Some(Token::Close) | None => return Ok(()),
                Some(t) => {
                    return Err(CurveError::Parse(format!(
                        "unexpected {t:?}: markings need finite scaling"
                    )))
                }
            }
        }
    }
}

/// Parses a term; the result is canonicalized but not validated.
pub fn parse_term(text: &str, mode: Mode) -> Result<ScaledType, CurveError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let root = match mode {
        Mode::Projective => {
            if p.peek() == Some(&Token::Tau) {
                p.pos += 1;
                p.expect(Token::Open)?;
                let mut root = Vertex::leaf(Label::InfiniteRoot, []);
                p.infinite_items(&mut root)?;
                p.expect(Token::Close)?;
                root
            } else {
                p.expect(Token::Open)?;
                p.expect(Token::Tau)?;
                p.expect(Token::Kappa)?;
                p.expect(Token::Close)?;
                p.expect(Token::Open)?;
                let mut root = Vertex::leaf(Label::FiniteRoot, []);
                p.finite_items(&mut root)?;
                p.expect(Token::Close)?;
                root
            }
        }
        Mode::Affine => {
            let mut root = Vertex::leaf(Label::Infinite, [0]);
            p.infinite_items(&mut root)?;
            if root.children.len() == 1 && root.children[0].label == Label::Transition {
                let mut only = root.children.pop().unwrap();
                only.markings.insert(0);
                only
            } else {
                root
            }
        }
    };
    if p.pos != p.tokens.len() {
        return Err(CurveError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(ScaledType::new(mode, root))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_of_a_deep_configuration() {
        let text = "τ((κ(z1 z2) κ(z3)) κ((z4 z5)(z6 (z7 z8))))";
        let t = parse_term(text, Mode::Projective).unwrap();
        assert_eq!(t.marking_count(), 8);
        assert_eq!(t.term(), "τ((κ(z1 z2) κ(z3)) κ((z4 z5) (z6 (z7 z8))))");
        assert_eq!(parse_term(&t.term(), Mode::Projective).unwrap(), t);
        assert_eq!(super::super::validate(&t), Ok(()));
    }

    #[test]
    fn ascii_and_affine_forms() {
        let t = parse_term("tau(kappa(z2 z1))", Mode::Projective).unwrap();
        assert_eq!(t.term(), "τ(κ(z1 z2))");
        let a = parse_term("κ(z2) κ(z1)", Mode::Affine).unwrap();
        assert_eq!(a.root.label, Label::Infinite);
        assert_eq!(a.term(), "κ(z1) κ(z2)");
        let a = parse_term("κ((z1 z2))", Mode::Affine).unwrap();
        assert_eq!(a.root.label, Label::Transition);
        assert!(a.root.markings.contains(&0));
    }

    #[test]
    fn rejects_malformed_terms() {
        assert!(parse_term("τ(z1)", Mode::Projective).is_err());
        assert!(parse_term("τ(κ(z1)", Mode::Projective).is_err());
        assert!(parse_term("(τκ)(z1 z1)", Mode::Projective).is_err());
        assert!(parse_term("τ() x", Mode::Projective).is_err());
    }
}
