use std::iter::Peekable;
use std::str::Chars;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    Comma,
    Arrow,
    /// Lexical error; the parser turns it into E-SYNTAX.
    Invalid(String),
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Str(s) => format!("string \"{s}\""),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::Invalid(msg) => msg.clone(),
            TokenKind::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: u32,
    pub column: u32,
}

struct Lexer<'a> {
    chars: Peekable<Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn string(&mut self) -> TokenKind {
        let mut out = String::new();
        loop {
            match self.chars.peek().copied() {
                None | Some('\n') => return TokenKind::Invalid("unterminated string".into()),
                Some('"') => {
                    self.bump();
                    return TokenKind::Str(out);
                }
                Some('\\') => {
                    self.bump();
                    match self.chars.peek().copied() {
                        Some(c @ ('"' | '\\')) => {
                            self.bump();
                            out.push(c);
                        }
                        Some(c) => {
                            self.bump();
                            return TokenKind::Invalid(format!("invalid escape `\\{c}` in string"));
                        }
                        None => return TokenKind::Invalid("unterminated string".into()),
                    }
                }
                Some(c) => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    fn next_token(&mut self) -> Token {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let kind = match self.bump() {
            None => TokenKind::Eof,
            Some('{') => TokenKind::LBrace,
            Some('}') => TokenKind::RBrace,
            Some(',') => TokenKind::Comma,
            Some('-') => {
                if self.chars.peek() == Some(&'>') {
                    self.bump();
                    TokenKind::Arrow
                } else {
                    TokenKind::Invalid("expected `->`".into())
                }
            }
            Some('"') => self.string(),
            Some(c) if c == '_' || c.is_ascii_alphabetic() => {
                let mut ident = String::from(c);
                while let Some(&c) = self.chars.peek() {
                    if c == '_' || c.is_ascii_alphanumeric() {
                        ident.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                TokenKind::Ident(ident)
            }
            Some(c) => TokenKind::Invalid(format!("unexpected character `{c}`")),
        };
        Token { kind, line, column }
    }
}

/// Tokenizes the whole input. The last token is always `Eof`.
pub(crate) fn tokenize(text: &str) -> Vec<Token> {
    let mut lexer = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let tok = lexer.next_token();
        let eof = tok.kind == TokenKind::Eof;
        out.push(tok);
        if eof {
            return out;
        }
    }
}

/// Quotes a string for ADL output.
pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c == '_' || c.is_ascii_alphabetic())
        && chars.all(|c| c == '_' || c.is_ascii_alphanumeric())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            kinds("bind A -> B, C # trailing\n{}"),
            vec![
                TokenKind::Ident("bind".into()),
                TokenKind::Ident("A".into()),
                TokenKind::Arrow,
                TokenKind::Ident("B".into()),
                TokenKind::Comma,
                TokenKind::Ident("C".into()),
                TokenKind::LBrace,
                TokenKind::RBrace,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn strings_and_escapes() {
        assert_eq!(
            kinds(r#""a \"b\" \\ c""#),
            vec![TokenKind::Str(r#"a "b" \ c"#.into()), TokenKind::Eof]
        );
        assert!(matches!(kinds("\"abc")[0], TokenKind::Invalid(_)));
        assert!(matches!(kinds("\"a\\n\"")[0], TokenKind::Invalid(_)));
    }

    #[test]
    fn positions_count_characters() {
        let toks = tokenize("é x\n  y");
        assert_eq!((toks[0].line, toks[0].column), (1, 1));
        assert!(matches!(toks[0].kind, TokenKind::Invalid(_)));
        assert_eq!((toks[1].line, toks[1].column), (1, 3));
        assert_eq!((toks[2].line, toks[2].column), (2, 3));
    }

    #[test]
    fn quote_round_trips() {
        let s = r#"he said "hi" \o/"#;
        assert_eq!(kinds(&quote(s))[0], TokenKind::Str(s.into()));
        assert!(is_identifier("_a1"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier(""));
    }
}
