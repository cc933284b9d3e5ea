//! Bracket notation for scoring games, and a structured record form.
//!
//! ```text
//! game    := number | '{' options '|' number '|' options '}'
//! options := '.' | game (',' game)*
//! number  := [+-] digits [ '.' digits | '/' digits ]
//! ```
//!
//! A bare number `n` stands for the leaf `{.|n|.}`. Whitespace is ignored.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::GameTerm;
use crate::value::{Score, ScoreParseError};

/// Byte offsets `[start, end)` into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unexpected trailing input")]
    Trailing,
    #[error(transparent)]
    Number(#[from] ScoreParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

/// Non-fatal findings from [`parse_with_warnings`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// An option set listed the same game more than once.
    DuplicateOptions { span: SourceSpan, collapsed: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::DuplicateOptions { span, collapsed } => {
                write!(f, "collapsed {collapsed} duplicate option(s) in the game at {span}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    Dot,
    Number(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Open => "`{`".into(),
            Tok::Close => "`}`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Number(n) => format!("number `{n}`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'{' => Some(Tok::Open),
            b'}' => Some(Tok::Close),
            b'|' => Some(Tok::Bar),
            b',' => Some(Tok::Comma),
            b'.' => Some(Tok::Dot),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan { start: i, end: i + 1 }));
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'-' || c == b'+' || c.is_ascii_digit() {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // A '.' or '/' continues the number only when a digit follows.
            if i + 1 < bytes.len() && (bytes[i] == b'.' || bytes[i] == b'/') && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            } else if i < bytes.len() && bytes[i] == b'/' {
                i += 1;
            }
            out.push((Tok::Number(text[start..i].to_string()), SourceSpan { start, end: i }));
            continue;
        }
        let ch = text[i..].chars().next().expect("in bounds");
        return Err(ParseError {
            kind: ParseErrorKind::UnexpectedChar(ch),
            span: SourceSpan { start: i, end: i + ch.len_utf8() },
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, SourceSpan)],
    pos: usize,
    end: usize,
    warnings: Vec<ParseWarning>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span_here(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan { start: self.end, end: self.end })
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = self.peek().map(Tok::describe).unwrap_or_else(|| "end of input".into());
        ParseError { kind: ParseErrorKind::Unexpected { expected, found }, span: self.span_here() }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn number(&mut self) -> Result<Score, ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Number(n), span)) => {
                let score = n.parse::<Score>().map_err(|e| ParseError { kind: e.into(), span: *span })?;
                self.pos += 1;
                Ok(score)
            }
            _ => Err(self.unexpected("a score")),
        }
    }

    fn game(&mut self) -> Result<GameTerm, ParseError> {
        match self.peek() {
            Some(Tok::Number(_)) => Ok(GameTerm::leaf(self.number()?)),
            Some(Tok::Open) => {
                let start = self.span_here().start;
                self.pos += 1;
                let left = self.options()?;
                self.expect(Tok::Bar, "`|`")?;
                let score = self.number()?;
                self.expect(Tok::Bar, "`|`")?;
                let right = self.options()?;
                let end = self.span_here().end;
                self.expect(Tok::Close, "`}`")?;
                let (g, collapsed) = GameTerm::new_counting(left, score, right);
                if collapsed > 0 {
                    self.warnings.push(ParseWarning::DuplicateOptions { span: SourceSpan { start, end }, collapsed });
                }
                Ok(g)
            }
            _ => Err(self.unexpected("a game")),
        }
    }

    fn options(&mut self) -> Result<Vec<GameTerm>, ParseError> {
        if self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        if !matches!(self.peek(), Some(Tok::Number(_)) | Some(Tok::Open)) {
            return Err(self.unexpected("an option set (`.` or games)"));
        }
        let mut options = vec![self.game()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            options.push(self.game()?);
        }
        Ok(options)
    }
}

/// Parses a game, also returning warnings about collapsed duplicates.
pub fn parse_with_warnings(text: &str) -> Result<(GameTerm, Vec<ParseWarning>), ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError { kind: ParseErrorKind::Empty, span: SourceSpan { start: 0, end: text.len() } });
    }
    let mut parser = Parser { toks: &toks, pos: 0, end: text.len(), warnings: Vec::new() };
    let g = parser.game()?;
    if parser.pos != toks.len() {
        return Err(ParseError { kind: ParseErrorKind::Trailing, span: parser.span_here() });
    }
    Ok((g, parser.warnings))
}

pub fn parse(text: &str) -> Result<GameTerm, ParseError> {
    parse_with_warnings(text).map(|(g, _)| g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Style {
    /// Leaves as bare numbers.
    #[default]
    Compact,
    /// Every leaf spelled `{.|n|.}`; this is also the order key.
    Full,
}

pub fn print(g: &GameTerm, style: Style) -> String {
    match style {
        Style::Full => g.key_str().to_string(),
        Style::Compact => {
            let mut out = String::new();
            write_compact(g, &mut out);
            out
        }
    }
}

fn write_compact(g: &GameTerm, out: &mut String) {
    if g.is_leaf() {
        out.push_str(&g.score().to_string());
        return;
    }
    out.push('{');
    write_compact_options(g.left(), out);
    out.push('|');
    out.push_str(&g.score().to_string());
    out.push('|');
    write_compact_options(g.right(), out);
    out.push('}');
}

fn write_compact_options(options: &[GameTerm], out: &mut String) {
    if options.is_empty() {
        out.push('.');
    }
    for (i, o) in options.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_compact(o, out);
    }
}

/// Tree-shaped record with exact string scores.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredRecord {
    pub left: Vec<StructuredRecord>,
    pub score: String,
    pub right: Vec<StructuredRecord>,
}

#[derive(Debug, Error)]
pub enum StructuredError {
    #[error("malformed record: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("bad score `{text}`: {source}")]
    Score { text: String, source: ScoreParseError },
}

pub fn to_structured(g: &GameTerm) -> StructuredRecord {
    StructuredRecord {
        left: g.left().iter().map(to_structured).collect(),
        score: g.score().to_string(),
        right: g.right().iter().map(to_structured).collect(),
    }
}

pub fn from_structured(record: &StructuredRecord) -> Result<GameTerm, StructuredError> {
    let score = record
        .score
        .parse::<Score>()
        .map_err(|source| StructuredError::Score { text: record.score.clone(), source })?;
    let left = record.left.iter().map(from_structured).collect::<Result<_, _>>()?;
    let right = record.right.iter().map(from_structured).collect::<Result<_, _>>()?;
    Ok(GameTerm::new(left, score, right))
}

/// One-line JSON encoding of a game.
pub fn to_json_line(g: &GameTerm) -> String {
    serde_json::to_string(&to_structured(g)).expect("records always serialize")
}

pub fn from_json_line(line: &str) -> Result<GameTerm, StructuredError> {
    let record: StructuredRecord = serde_json::from_str(line)?;
    from_structured(&record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::leaf;

    const TBF: &str = "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}";

    fn s(n: i64) -> Score {
        Score::from_integer(n)
    }

    #[test]
    fn shorthand_leaves() {
        let g = parse("{0|1|2}").unwrap();
        assert_eq!(g, GameTerm::new(vec![leaf(s(0))], s(1), vec![leaf(s(2))]));
        assert_eq!(parse("5").unwrap(), leaf(s(5)));
        assert_eq!(parse(" { . | -3/2 | . } ").unwrap(), leaf(Score::new(-3, 2)));
        assert_eq!(parse("0.5").unwrap(), leaf(Score::new(1, 2)));
    }

    #[test]
    fn figure_caption_reprints_exactly() {
        let g = parse(TBF).unwrap();
        assert_eq!(print(&g, Style::Compact), TBF);
        assert_eq!(print(&g, Style::Full), "{{.|0|{{.|-1|.}|-1|.}}|0|{{.|1|{.|1|.}}|0|.}}");
        assert_eq!(print(&leaf(s(0)), Style::Compact), "0");
    }

    #[test]
    fn score_is_mandatory() {
        let err = parse("{.|.}").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Unexpected { expected: "a score", .. }));
        assert_eq!(err.span, SourceSpan { start: 3, end: 4 });
    }

    #[test]
    fn syntax_errors_carry_spans() {
        let cases = [
            ("", ParseErrorKind::Empty),
            ("   ", ParseErrorKind::Empty),
            ("{1|0|x}", ParseErrorKind::UnexpectedChar('x')),
        ];
        for (text, kind) in cases {
            assert_eq!(parse(text).unwrap_err().kind, kind, "{text:?}");
        }
        // empty option set must be spelled `.`
        assert!(matches!(parse("{|0|.}").unwrap_err().kind, ParseErrorKind::Unexpected { .. }));
        // trailing comma
        let err = parse("{1,|0|.}").unwrap_err();
        assert_eq!(err.span.start, 3);
        assert!(matches!(parse("{1|0|.}}").unwrap_err().kind, ParseErrorKind::Trailing));
        assert!(matches!(parse("{1|0|.").unwrap_err().kind, ParseErrorKind::Unexpected { .. }));
        assert!(matches!(
            parse("{1|1/0|.}").unwrap_err().kind,
            ParseErrorKind::Number(ScoreParseError::ZeroDenominator(_))
        ));
        assert!(matches!(parse("1/").unwrap_err().kind, ParseErrorKind::Number(_)));
    }

    #[test]
    fn duplicates_collapse_with_warning() {
        let (g, warnings) = parse_with_warnings("{1,1,2|0|.}").unwrap();
        assert_eq!(g, parse("{2,1|0|.}").unwrap());
        assert_eq!(warnings.len(), 1);
        assert!(matches!(warnings[0], ParseWarning::DuplicateOptions { collapsed: 1, .. }));
    }

    #[test]
    fn option_order_is_canonical_when_printed() {
        assert_eq!(print(&parse("{{3|1|4},{3|0|4}|0|.}").unwrap(), Style::Compact), "{{3|0|4},{3|1|4}|0|.}");
    }

    #[test]
    fn structured_records() {
        let half = leaf(Score::new(1, 2));
        let rec = to_structured(&half);
        assert_eq!(rec.score, "1/2");
        let tbf = parse(TBF).unwrap();
        assert_eq!(from_json_line(&to_json_line(&tbf)).unwrap(), tbf);
        let err = from_json_line(r#"{"left":[],"score":"0","right":[],"extra":1}"#).unwrap_err();
        assert!(matches!(err, StructuredError::Malformed(_)));
        let err = from_json_line(r#"{"left":[],"score":"zero","right":[]}"#).unwrap_err();
        assert!(matches!(err, StructuredError::Score { .. }));
    }
}
