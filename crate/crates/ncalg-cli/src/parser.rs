//! The presentation DSL: a lexer and recursive-descent parser for
//! documents of the form
//!
//! ```text
//! generators: n=2;
//! order: A1 < A2 < a1 < a2;
//! relations:
//!   a1*A1 - A1*a1 - 1;
//! rules:
//!   a1*A1 -> A1*a1 + 1;
//! ```
//!
//! plus the matching printer, so built-in presentations round-trip
//! through text.

use std::fmt;

use ncalg::freealg::{integer_scalar, GeneratorSymbol, Monomial, Polynomial, Scalar, SymbolKind};
use ncalg::ordering::GeneratorOrder;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, column: usize, message: String },
    IndexOutOfRange { line: usize, column: usize, index: u32, n: usize },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, column, message } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            ParseError::IndexOutOfRange { line, column, index, n } => write!(
                f,
                "generator index {index} out of range at line {line}, column {column}: \
                 the document declares n = {n}"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Word(String),
    Generator(SymbolKind, u32),
    Integer(String),
    Colon,
    Semicolon,
    Equals,
    Less,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Arrow,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::Generator(kind, index) => match kind {
                SymbolKind::Destruction => format!("`a{index}`"),
                SymbolKind::Creation => format!("`A{index}`"),
            },
            TokenKind::Integer(s) => format!("`{s}`"),
            TokenKind::Colon => "`:`".to_string(),
            TokenKind::Semicolon => "`;`".to_string(),
            TokenKind::Equals => "`=`".to_string(),
            TokenKind::Less => "`<`".to_string(),
            TokenKind::Plus => "`+`".to_string(),
            TokenKind::Minus => "`-`".to_string(),
            TokenKind::Star => "`*`".to_string(),
            TokenKind::Slash => "`/`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::Arrow => "`->`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut column = 1usize;
    while let Some(&c) = chars.peek() {
        let (start_line, start_column) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            // Comment to end of line.
            while let Some(&c) = chars.peek() {
                bump(&mut chars);
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        let kind = if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() {
                    word.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let mut letters = word.chars();
            let head = letters.next().unwrap();
            let tail: String = letters.collect();
            if (head == 'a' || head == 'A') && !tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit())
            {
                let index: u32 = tail.parse().map_err(|_| ParseError::Syntax {
                    line: start_line,
                    column: start_column,
                    message: format!("generator index `{tail}` is too large"),
                })?;
                let kind = if head == 'a' { SymbolKind::Destruction } else { SymbolKind::Creation };
                TokenKind::Generator(kind, index)
            } else {
                TokenKind::Word(word)
            }
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            TokenKind::Integer(digits)
        } else {
            let c = bump(&mut chars);
            match c {
                ':' => TokenKind::Colon,
                ';' => TokenKind::Semicolon,
                '=' => TokenKind::Equals,
                '<' => TokenKind::Less,
                '+' => TokenKind::Plus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '-' => {
                    if chars.peek() == Some(&'>') {
                        bump(&mut chars);
                        TokenKind::Arrow
                    } else {
                        TokenKind::Minus
                    }
                }
                other => {
                    return Err(ParseError::Syntax {
                        line: start_line,
                        column: start_column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        tokens.push(Token { kind, line: start_line, column: start_column });
    }
    Ok(tokens)
}

/// A parsed document: the generator count, the monomial order (explicit
/// or the default creations-first ranking), the relation polynomials,
/// and any directly given rewrite rules.
#[derive(Debug, Clone)]
pub struct ParsedDocument {
    pub n: usize,
    pub order: GeneratorOrder,
    pub relations: Vec<Polynomial>,
    pub rules: Vec<(Monomial, Polynomial)>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
    end_line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.column),
            None => (self.end_line, self.end_column),
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax { line, column, message: message.into() })
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        match self.peek() {
            Some(t) if t.kind == *kind => Ok(self.next().unwrap()),
            Some(t) => {
                let found = t.kind.describe();
                self.fail(format!("expected {what}, found {found}"))
            }
            None => self.fail(format!("expected {what}, found end of input")),
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<Token, ParseError> {
        self.expect(&TokenKind::Word(word.to_string()), &format!("`{word}`"))
    }

    fn symbol(&mut self, kind: SymbolKind, index: u32, line: usize, column: usize)
        -> Result<GeneratorSymbol, ParseError>
    {
        if index == 0 || index as usize > self.n {
            return Err(ParseError::IndexOutOfRange { line, column, index, n: self.n });
        }
        Ok(match kind {
            SymbolKind::Destruction => GeneratorSymbol::destruction(index),
            SymbolKind::Creation => GeneratorSymbol::creation(index),
        })
    }

    /// True when the next token can begin an expression.
    fn at_expression(&self) -> bool {
        matches!(
            self.peek().map(|t| &t.kind),
            Some(
                TokenKind::Generator(..)
                    | TokenKind::Integer(_)
                    | TokenKind::Minus
                    | TokenKind::LParen
            )
        )
    }

    fn expression(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.next();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(TokenKind::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star)) {
            self.next();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let Some(token) = self.next() else {
            return self.fail("expected a factor, found end of input");
        };
        match token.kind {
            TokenKind::Generator(kind, index) => {
                let s = self.symbol(kind, index, token.line, token.column)?;
                Ok(Polynomial::generator(s))
            }
            TokenKind::Integer(digits) => {
                let numer = self.literal(&digits, token.line, token.column)?;
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Slash)) {
                    self.next();
                    let Some(den_token) = self.next() else {
                        return self.fail("expected a denominator, found end of input");
                    };
                    let TokenKind::Integer(den_digits) = den_token.kind.clone() else {
                        let found = den_token.kind.describe();
                        return Err(ParseError::Syntax {
                            line: den_token.line,
                            column: den_token.column,
                            message: format!("expected a denominator, found {found}"),
                        });
                    };
                    let denom = self.literal(&den_digits, den_token.line, den_token.column)?;
                    if denom.is_zero() {
                        return Err(ParseError::Syntax {
                            line: den_token.line,
                            column: den_token.column,
                            message: "zero denominator in rational literal".to_string(),
                        });
                    }
                    Ok(Polynomial::constant(numer / denom))
                } else {
                    Ok(Polynomial::constant(numer))
                }
            }
            TokenKind::LParen => {
                let inner = self.expression()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            other => {
                let found = other.describe();
                Err(ParseError::Syntax {
                    line: token.line,
                    column: token.column,
                    message: format!("expected a factor, found {found}"),
                })
            }
        }
    }

    fn literal(&self, digits: &str, line: usize, column: usize) -> Result<Scalar, ParseError> {
        integer_scalar(digits).ok_or_else(|| ParseError::Syntax {
            line,
            column,
            message: format!("invalid integer literal `{digits}`"),
        })
    }
}

/// Parse a full presentation document.
pub fn parse_document(text: &str) -> Result<ParsedDocument, ParseError> {
    let tokens = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    let mut p = Parser { tokens, pos: 0, n: 0, end_line: lines, end_column: last_len + 1 };

    p.expect_word("generators")?;
    p.expect(&TokenKind::Colon, "`:`")?;
    p.expect_word("n")?;
    p.expect(&TokenKind::Equals, "`=`")?;
    let Some(count) = p.next() else {
        return p.fail("expected the generator count, found end of input");
    };
    let TokenKind::Integer(digits) = &count.kind else {
        let found = count.kind.describe();
        return Err(ParseError::Syntax {
            line: count.line,
            column: count.column,
            message: format!("expected the generator count, found {found}"),
        });
    };
    let n: usize = digits.parse().map_err(|_| ParseError::Syntax {
        line: count.line,
        column: count.column,
        message: format!("invalid generator count `{digits}`"),
    })?;
    if n == 0 {
        return Err(ParseError::Syntax {
            line: count.line,
            column: count.column,
            message: "the generator count must be at least 1".to_string(),
        });
    }
    p.n = n;
    p.expect(&TokenKind::Semicolon, "`;`")?;

    let mut order = None;
    let mut relations = Vec::new();
    let mut rules = Vec::new();
    while let Some(token) = p.peek().cloned() {
        let TokenKind::Word(section) = &token.kind else {
            let found = token.kind.describe();
            return Err(ParseError::Syntax {
                line: token.line,
                column: token.column,
                message: format!("expected a section header, found {found}"),
            });
        };
        match section.as_str() {
            "order" => {
                p.next();
                p.expect(&TokenKind::Colon, "`:`")?;
                let mut ranking = Vec::new();
                loop {
                    let Some(sym_token) = p.next() else {
                        return p.fail("expected a generator symbol, found end of input");
                    };
                    let TokenKind::Generator(kind, index) = sym_token.kind else {
                        let found = sym_token.kind.describe();
                        return Err(ParseError::Syntax {
                            line: sym_token.line,
                            column: sym_token.column,
                            message: format!("expected a generator symbol, found {found}"),
                        });
                    };
                    ranking.push(p.symbol(kind, index, sym_token.line, sym_token.column)?);
                    match p.peek().map(|t| &t.kind) {
                        Some(TokenKind::Less) => {
                            p.next();
                        }
                        Some(TokenKind::Semicolon) => {
                            p.next();
                            break;
                        }
                        _ => return p.fail("expected `<` or `;` in the order list"),
                    }
                }
                let built = GeneratorOrder::new(ranking).map_err(|e| ParseError::Syntax {
                    line: token.line,
                    column: token.column,
                    message: e.to_string(),
                })?;
                if built.n() != n {
                    return Err(ParseError::Syntax {
                        line: token.line,
                        column: token.column,
                        message: format!(
                            "the order lists {} generators but the document declares n = {n}",
                            2 * built.n()
                        ),
                    });
                }
                order = Some(built);
            }
            "relations" => {
                p.next();
                p.expect(&TokenKind::Colon, "`:`")?;
                while p.at_expression() {
                    let e = p.expression()?;
                    p.expect(&TokenKind::Semicolon, "`;`")?;
                    relations.push(e);
                }
            }
            "rules" => {
                p.next();
                p.expect(&TokenKind::Colon, "`:`")?;
                while p.at_expression() {
                    let (lhs_line, lhs_column) = p.here();
                    let lhs = p.expression()?;
                    p.expect(&TokenKind::Arrow, "`->`")?;
                    let rhs = p.expression()?;
                    p.expect(&TokenKind::Semicolon, "`;`")?;
                    let word = single_word(&lhs).ok_or_else(|| ParseError::Syntax {
                        line: lhs_line,
                        column: lhs_column,
                        message: "a rule's left side must be a single word with coefficient 1"
                            .to_string(),
                    })?;
                    rules.push((word, rhs));
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    line: token.line,
                    column: token.column,
                    message: format!(
                        "unknown section `{other}` (expected `order`, `relations`, or `rules`)"
                    ),
                });
            }
        }
    }

    Ok(ParsedDocument {
        n,
        order: order.unwrap_or_else(|| GeneratorOrder::creations_first(n)),
        relations,
        rules,
    })
}

fn single_word(p: &Polynomial) -> Option<Monomial> {
    let terms = p.terms();
    if terms.len() == 1 && terms[0].1.is_one() && terms[0].0.degree() >= 1 {
        Some(terms[0].0.clone())
    } else {
        None
    }
}

/// Parse a standalone expression against a known generator count.
pub fn parse_expression(text: &str, n: usize) -> Result<Polynomial, ParseError> {
    let tokens = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    let mut p = Parser { tokens, pos: 0, n, end_line: lines, end_column: last_len + 1 };
    let e = p.expression()?;
    if let Some(extra) = p.peek() {
        let found = extra.kind.describe();
        return Err(ParseError::Syntax {
            line: extra.line,
            column: extra.column,
            message: format!("trailing input after the expression: {found}"),
        });
    }
    Ok(e)
}

pub fn print_scalar(c: &Scalar) -> String {
    c.to_string()
}

pub fn print_monomial(m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.symbols().iter().map(|s| s.to_string()).collect::<Vec<_>>().join("*")
    }
}

/// Render a polynomial in the DSL (`1/2*A1*a1 - a2 + 3`).
pub fn print_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            out.push_str(&print_scalar(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&print_monomial(m));
        } else {
            out.push_str(&format!("{}*{}", print_scalar(&magnitude), print_monomial(m)));
        }
    }
    out
}

/// Render a presentation as a complete document.
pub fn print_presentation(n: usize, order: &GeneratorOrder, relations: &[Polynomial]) -> String {
    let mut out = format!("generators: n={n};\n");
    out.push_str(&format!("order: {};\n", ncalg::ordering::format_ranking(order)));
    out.push_str("relations:\n");
    for r in relations {
        out.push_str(&format!("  {};\n", print_polynomial(r)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncalg::freealg::{frac, int};

    fn d(i: u32) -> GeneratorSymbol {
        GeneratorSymbol::destruction(i)
    }

    fn c(i: u32) -> GeneratorSymbol {
        GeneratorSymbol::creation(i)
    }

    #[test]
    fn weyl_document_parses() {
        let doc = parse_document("generators: n=1; relations: a1*A1 - A1*a1 - 1;").unwrap();
        assert_eq!(doc.n, 1);
        assert_eq!(doc.order.ranking()[0], c(1));
        assert_eq!(doc.relations.len(), 1);
        let weyl = Polynomial::monomial(Monomial::from_symbols([d(1), c(1)]))
            .sub(&Polynomial::monomial(Monomial::from_symbols([c(1), d(1)])))
            .sub(&Polynomial::one());
        assert_eq!(doc.relations[0], weyl);
    }

    #[test]
    fn precedence_and_rationals() {
        let doc =
            parse_document("generators: n=2; relations: 1 - 2*a1*a2 + 3/2*(A1 + a1);").unwrap();
        let p = &doc.relations[0];
        assert_eq!(p.coeff(&Monomial::one()), int(1));
        assert_eq!(p.coeff(&Monomial::from_symbols([d(1), d(2)])), int(-2));
        assert_eq!(p.coeff(&Monomial::generator(c(1))), frac(3, 2));
        assert_eq!(p.coeff(&Monomial::generator(d(1))), frac(3, 2));
    }

    #[test]
    fn explicit_order_and_rules_sections() {
        let doc = parse_document(
            "generators: n=1;\norder: a1 < A1;\nrules:\n  A1*a1 -> 1;\n",
        )
        .unwrap();
        assert_eq!(doc.order.ranking()[0], d(1));
        assert_eq!(doc.rules.len(), 1);
        assert_eq!(doc.rules[0].0, Monomial::from_symbols([c(1), d(1)]));
        assert_eq!(doc.rules[0].1, Polynomial::one());
    }

    #[test]
    fn index_out_of_range_is_positional() {
        let err = parse_document("generators: n=1; relations: a2;").unwrap_err();
        match err {
            ParseError::IndexOutOfRange { line, column, index, n } => {
                assert_eq!((line, column, index, n), (1, 29, 2, 1));
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_document("generators: n=1;\nrelations: a1 + ;").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!((line, column), (2, 17));
            }
            other => panic!("wrong error: {other}"),
        }
        let err = parse_document("generators: n=0;").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn unterminated_relation_is_rejected() {
        let err = parse_document("generators: n=1; relations: a1*A1").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn polynomial_printing_round_trips() {
        let samples = [
            Polynomial::zero(),
            Polynomial::one().neg(),
            Polynomial::term(Monomial::from_symbols([c(1), d(1)]), frac(-3, 7))
                .add(&Polynomial::term(Monomial::generator(d(2)), int(5)))
                .add(&Polynomial::constant(frac(1, 2))),
        ];
        for p in &samples {
            let text = print_polynomial(p);
            let back = parse_expression(&text, 2).unwrap();
            assert_eq!(&back, p, "round-trip through `{text}`");
        }
    }

    #[test]
    fn preset_documents_round_trip() {
        use ncalg::noa::{preset, Family};
        for family in Family::ALL {
            let constant = if family.is_q_family() { frac(1, 2) } else { int(1) };
            let built = preset(family, 2, &constant).unwrap();
            let text =
                print_presentation(2, built.system.order().base(), &built.presentation.generators);
            let doc = parse_document(&text).unwrap();
            assert_eq!(doc.relations, built.presentation.generators, "{family}");
            assert_eq!(doc.order.ranking(), built.system.order().base().ranking());
        }
    }

    #[test]
    fn comments_are_ignored() {
        let doc = parse_document(
            "# a header comment\ngenerators: n=1; # trailing\nrelations: a1*a1; # done\n",
        )
        .unwrap();
        assert_eq!(doc.relations.len(), 1);
    }
}
