use super::ast::*;
use super::lexer::{tokenize, Token, TokenKind};
use crate::diagnostic::{codes, Diagnostic, SourceLocation};
use crate::metamodel::ViewFnCategory;

const TOP_LEVEL: [&str; 7] = [
    "process",
    "dialog",
    "component",
    "external_system",
    "class",
    "node",
    "bind",
];

type PResult<T> = Result<T, Diagnostic>;

/// Parses ADL text. Never stops at the first error: after a syntax error the
/// parser skips to the end of the enclosing top-level block (or the next
/// top-level keyword) and continues, so each top-level item contributes at
/// most one E-SYNTAX.
pub fn parse(text: &str, source_name: &str) -> (ModelAst, Vec<Diagnostic>) {
    let mut parser = Parser {
        tokens: tokenize(text),
        pos: 0,
        depth: 0,
        source: source_name,
    };
    let mut ast = ModelAst::default();
    let mut diags = Vec::new();
    while !parser.at_eof() {
        let start = parser.pos;
        match parser.top_level() {
            Ok(item) => ast.items.push(item),
            Err(d) => {
                diags.push(d);
                parser.recover(start);
            }
        }
    }
    (ast, diags)
}

/// Like [`parse`] but starts from raw bytes, reporting E-ENCODING for input
/// that is not UTF-8.
pub fn parse_bytes(bytes: &[u8], source_name: &str) -> (ModelAst, Vec<Diagnostic>) {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text, source_name),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            // valid_up_to is a char boundary, so this slice is UTF-8.
            let prefix = std::str::from_utf8(valid).unwrap_or_default();
            let line = prefix.matches('\n').count() as u32 + 1;
            let column = prefix.rsplit('\n').next().map_or(0, |l| l.chars().count()) as u32 + 1;
            let diag = Diagnostic::error(
                codes::E_ENCODING,
                format!("input is not valid UTF-8 (byte offset {})", e.valid_up_to()),
            )
            .at(SourceLocation::new(source_name, line, column));
            (ModelAst::default(), vec![diag])
        }
    }
}

struct Parser<'s> {
    tokens: Vec<Token>,
    pos: usize,
    depth: u32,
    source: &'s str,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn location(&self, tok: &Token) -> SourceLocation {
        SourceLocation::new(self.source, tok.line, tok.column)
    }

    fn here(&self) -> SourceLocation {
        self.location(self.peek())
    }

    fn error_here(&self, expected: &str) -> Diagnostic {
        let tok = self.peek();
        let message = match &tok.kind {
            TokenKind::Invalid(msg) => msg.clone(),
            other => format!("expected {expected}, found {}", other.describe()),
        };
        Diagnostic::error(codes::E_SYNTAX, message).at(self.location(tok))
    }

    fn recover(&mut self, start: usize) {
        if self.pos == start {
            self.advance();
        }
        loop {
            match &self.peek().kind {
                TokenKind::Eof => break,
                TokenKind::LBrace => {
                    self.depth += 1;
                    self.advance();
                }
                TokenKind::RBrace => {
                    self.advance();
                    if self.depth <= 1 {
                        self.depth = 0;
                        break;
                    }
                    self.depth -= 1;
                }
                TokenKind::Ident(word) if self.depth == 0 && TOP_LEVEL.contains(&word.as_str()) => break,
                _ => {
                    self.advance();
                }
            }
        }
        self.depth = 0;
    }

    fn peek_keyword(&self) -> Option<&str> {
        match &self.peek().kind {
            TokenKind::Ident(s) => Some(s),
            _ => None,
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_keyword() == Some(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error_here(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        if let TokenKind::Ident(text) = &self.peek().kind {
            let text = text.clone();
            let tok = self.advance();
            Ok(Ident {
                text,
                location: self.location(&tok),
            })
        } else {
            Err(self.error_here("an identifier"))
        }
    }

    fn string(&mut self) -> PResult<String> {
        if let TokenKind::Str(s) = &self.peek().kind {
            let s = s.clone();
            self.advance();
            Ok(s)
        } else {
            Err(self.error_here("a quoted string"))
        }
    }

    fn open(&mut self) -> PResult<()> {
        if self.peek().kind == TokenKind::LBrace {
            self.advance();
            self.depth += 1;
            Ok(())
        } else {
            Err(self.error_here("`{`"))
        }
    }

    /// Consumes `}` if present.
    fn close(&mut self) -> bool {
        if self.peek().kind == TokenKind::RBrace {
            self.advance();
            self.depth = self.depth.saturating_sub(1);
            true
        } else {
            false
        }
    }

    fn id_list(&mut self) -> PResult<Vec<Ident>> {
        let mut ids = vec![self.ident()?];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            ids.push(self.ident()?);
        }
        Ok(ids)
    }

    /// `"<name>" as <ID>`
    fn named_id(&mut self) -> PResult<Entry> {
        let name = self.string()?;
        self.expect_keyword("as")?;
        let id = self.ident()?;
        Ok(Entry { name, id })
    }

    fn top_level(&mut self) -> PResult<TopLevel> {
        match self.peek_keyword() {
            Some("process") => {
                self.advance();
                self.process().map(TopLevel::Process)
            }
            Some("dialog") => {
                self.advance();
                self.dialog().map(TopLevel::Dialog)
            }
            Some("component") => {
                self.advance();
                self.component(false).map(TopLevel::Component)
            }
            Some("external_system") => {
                self.advance();
                self.component(true).map(TopLevel::Component)
            }
            Some("class") => {
                self.advance();
                self.class().map(TopLevel::Class)
            }
            Some("node") => {
                self.advance();
                self.node().map(TopLevel::Node)
            }
            Some("bind") => {
                let location = self.here();
                self.advance();
                let from = self.ident()?;
                if self.peek().kind != TokenKind::Arrow {
                    return Err(self.error_here("`->`"));
                }
                self.advance();
                let to = self.id_list()?;
                Ok(TopLevel::Bind(BindDecl { from, to, location }))
            }
            _ => {
                Err(self
                    .error_here("a top-level block (process, dialog, component, external_system, class, node) or bind"))
            }
        }
    }

    fn process(&mut self) -> PResult<ProcessDecl> {
        let Entry { name, id } = self.named_id()?;
        self.open()?;
        let mut functions = Vec::new();
        while !self.close() {
            self.expect_keyword("function")
                .map_err(|_| self.error_here("`function` or `}`"))?;
            functions.push(self.function()?);
        }
        Ok(ProcessDecl { name, id, functions })
    }

    fn function(&mut self) -> PResult<FunctionDecl> {
        let Entry { name, id } = self.named_id()?;
        self.open()?;
        let mut children = Vec::new();
        while !self.close() {
            match self.peek_keyword() {
                Some("function") => {
                    self.advance();
                    children.push(FunctionChild::Function(self.function()?));
                }
                Some("operation") => {
                    self.advance();
                    children.push(FunctionChild::Operation(self.operation()?));
                }
                _ => return Err(self.error_here("`function`, `operation` or `}`")),
            }
        }
        Ok(FunctionDecl { name, id, children })
    }

    fn operation(&mut self) -> PResult<OperationDecl> {
        let Entry { name, id } = self.named_id()?;
        let automated = self.eat_keyword("automated");
        self.open()?;
        let mut op = OperationDecl {
            name,
            id,
            automated,
            performer: None,
            service: None,
        };
        while !self.close() {
            match self.peek_keyword() {
                Some("performer") => {
                    if op.performer.is_some() {
                        return Err(self.error_here("a single `performer`"));
                    }
                    self.advance();
                    op.performer = Some(self.string()?);
                }
                Some("service") => {
                    if op.service.is_some() {
                        return Err(self.error_here("at most one `service` per operation"));
                    }
                    self.advance();
                    op.service = Some(self.service()?);
                }
                _ => return Err(self.error_here("`performer`, `service` or `}`")),
            }
        }
        Ok(op)
    }

    fn service(&mut self) -> PResult<ServiceDecl> {
        let name = match self.peek().kind {
            TokenKind::Str(_) => Some(self.string()?),
            _ => None,
        };
        self.expect_keyword("as")?;
        let id = self.ident()?;
        self.open()?;
        let mut auto_fns = Vec::new();
        while !self.close() {
            self.expect_keyword("auto_fn")
                .map_err(|_| self.error_here("`auto_fn` or `}`"))?;
            auto_fns.push(self.named_id()?);
        }
        Ok(ServiceDecl { name, id, auto_fns })
    }

    fn info_ref(&mut self, keyword: &str) -> PResult<InfoRef> {
        if self.eat_keyword(keyword) {
            Ok(InfoRef::Define(self.named_id()?))
        } else {
            Ok(InfoRef::Reference(self.ident().map_err(|_| {
                self.error_here(&format!("`{keyword}` or an information object id"))
            })?))
        }
    }

    fn dialog(&mut self) -> PResult<DialogDecl> {
        let Entry { name, id } = self.named_id()?;
        self.open()?;
        let mut items = Vec::new();
        while !self.close() {
            let location = self.here();
            let item = match self.peek_keyword() {
                Some("implements") => {
                    self.advance();
                    DialogItem::Implements(self.id_list()?)
                }
                Some("agent") => {
                    self.advance();
                    let agent = self
                        .peek_keyword()
                        .and_then(Agent::from_token)
                        .ok_or_else(|| self.error_here("`user`, `system` or `external`"))?;
                    self.advance();
                    DialogItem::Agent(agent, location)
                }
                Some("input") => {
                    self.advance();
                    DialogItem::Input(self.info_ref("resource")?)
                }
                Some("output") => {
                    self.advance();
                    DialogItem::Output(self.info_ref("product")?)
                }
                Some("form") => {
                    self.advance();
                    let text = self.string()?;
                    let id = if self.eat_keyword("as") {
                        Some(self.ident()?)
                    } else {
                        None
                    };
                    DialogItem::Form { text, id, location }
                }
                Some("view_fn") => {
                    self.advance();
                    let entry = self.named_id()?;
                    self.expect_keyword("category")?;
                    let category = self
                        .peek_keyword()
                        .and_then(ViewFnCategory::from_token)
                        .ok_or_else(|| {
                            self.error_here("`precondition`, `io`, `control`, `error` or `postcondition`")
                        })?;
                    self.advance();
                    DialogItem::ViewFn { entry, category }
                }
                _ => return Err(self.error_here("`implements`, `agent`, `input`, `output`, `form`, `view_fn` or `}`")),
            };
            items.push(item);
        }
        Ok(DialogDecl { name, id, items })
    }

    fn component(&mut self, external: bool) -> PResult<ComponentDecl> {
        let Entry { name, id } = self.named_id()?;
        self.open()?;
        let mut modules = Vec::new();
        while !self.close() {
            self.expect_keyword("module")
                .map_err(|_| self.error_here("`module` or `}`"))?;
            modules.push(self.named_id()?);
        }
        Ok(ComponentDecl {
            external,
            name,
            id,
            modules,
        })
    }

    fn class(&mut self) -> PResult<ClassDecl> {
        let Entry { name, id } = self.named_id()?;
        let hosted_by = if self.eat_keyword("hosted_by") {
            Some(self.ident()?)
        } else {
            None
        };
        self.open()?;
        let mut methods = Vec::new();
        while !self.close() {
            self.expect_keyword("method")
                .map_err(|_| self.error_here("`method` or `}`"))?;
            methods.push(self.named_id()?);
        }
        Ok(ClassDecl {
            name,
            id,
            hosted_by,
            methods,
        })
    }

    fn node(&mut self) -> PResult<NodeDecl> {
        let Entry { name, id } = self.named_id()?;
        self.open()?;
        let mut node = NodeDecl {
            name,
            id,
            requirements: None,
            deploys: Vec::new(),
        };
        while !self.close() {
            match self.peek_keyword() {
                Some("requirements") => {
                    if node.requirements.is_some() {
                        return Err(self.error_here("a single `requirements`"));
                    }
                    self.advance();
                    node.requirements = Some(self.string()?);
                }
                Some("deploys") => {
                    self.advance();
                    node.deploys.extend(self.id_list()?);
                }
                _ => return Err(self.error_here("`requirements`, `deploys` or `}`")),
            }
        }
        Ok(node)
    }
}
