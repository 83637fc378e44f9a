//! Minimal checker for the DOT language grammar (graphviz.org/doc/info/lang.html),
//! covering statements, attribute lists, edge chains and subgraphs. HTML
//! strings are not supported.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Colon,
    Arrow,
    Line,
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                    i += 1;
                }
                if i + 1 >= chars.len() {
                    return Err("unterminated comment".into());
                }
                i += 2;
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1;
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1;
            }
            '[' => {
                out.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Tok::RBracket);
                i += 1;
            }
            '=' => {
                out.push(Tok::Eq);
                i += 1;
            }
            ';' => {
                out.push(Tok::Semi);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            ':' => {
                out.push(Tok::Colon);
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::Arrow);
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                out.push(Tok::Line);
                i += 2;
            }
            '"' => {
                i += 1;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('\\') => {
                            s.push('\\');
                            if let Some(&n) = chars.get(i + 1) {
                                s.push(n);
                            }
                            i += 2;
                        }
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Id(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' || (c as u32) >= 0x80 => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric()
                        || chars[i] == '_'
                        || (chars[i] as u32) >= 0x80)
                {
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_digit() || c == '.' || c == '-' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                let mut dots = 0;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    if chars[i] == '.' {
                        dots += 1;
                    }
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                if dots > 1 || text == "-" || text == "." || text == "-." {
                    return Err(format!("bad numeral {text:?}"));
                }
                out.push(Tok::Id(text));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    directed: bool,
    edges: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, got {got:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            got => Err(format!("expected ID, got {got:?}")),
        }
    }

    fn keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(word))
    }

    fn graph(&mut self) -> Result<(), String> {
        if self.keyword("strict") {
            self.pos += 1;
        }
        let kind = self.id()?.to_ascii_lowercase();
        self.directed = match kind.as_str() {
            "digraph" => true,
            "graph" => false,
            other => return Err(format!("expected graph or digraph, got {other}")),
        };
        if let Some(Tok::Id(_)) = self.peek() {
            self.pos += 1;
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)?;
        if self.pos != self.toks.len() {
            return Err("trailing tokens after graph".into());
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(Tok::RBrace) | None) {
            self.stmt()?;
            if self.peek() == Some(&Tok::Semi) {
                self.pos += 1;
            }
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<(), String> {
        while self.peek() == Some(&Tok::LBracket) {
            self.pos += 1;
            while self.peek() != Some(&Tok::RBracket) {
                self.id()?;
                self.expect(Tok::Eq)?;
                self.id()?;
                if matches!(self.peek(), Some(Tok::Semi) | Some(Tok::Comma)) {
                    self.pos += 1;
                }
            }
            self.expect(Tok::RBracket)?;
        }
        Ok(())
    }

    fn node_id(&mut self) -> Result<(), String> {
        self.id()?;
        if self.peek() == Some(&Tok::Colon) {
            self.pos += 1;
            self.id()?;
            if self.peek() == Some(&Tok::Colon) {
                self.pos += 1;
                self.id()?;
            }
        }
        Ok(())
    }

    fn subgraph(&mut self) -> Result<(), String> {
        if self.keyword("subgraph") {
            self.pos += 1;
            if let Some(Tok::Id(_)) = self.peek() {
                self.pos += 1;
            }
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)
    }

    fn operand(&mut self) -> Result<(), String> {
        if self.keyword("subgraph") || self.peek() == Some(&Tok::LBrace) {
            self.subgraph()
        } else {
            self.node_id()
        }
    }

    fn stmt(&mut self) -> Result<(), String> {
        if self.keyword("graph") || self.keyword("node") || self.keyword("edge") {
            self.pos += 1;
            if self.peek() != Some(&Tok::LBracket) {
                return Err("attribute statement without attribute list".into());
            }
            return self.attr_list();
        }
        if matches!(self.toks.get(self.pos + 1), Some(Tok::Eq)) {
            self.id()?;
            self.pos += 1;
            self.id()?;
            return Ok(());
        }
        self.operand()?;
        while matches!(self.peek(), Some(Tok::Arrow) | Some(Tok::Line)) {
            let op = self.next().unwrap();
            if (op == Tok::Arrow) != self.directed {
                return Err("edge operator does not match graph kind".into());
            }
            self.operand()?;
            self.edges += 1;
        }
        self.attr_list()
    }
}

/// Returns the number of edge operators on success.
pub fn check_dot(src: &str) -> Result<usize, String> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        directed: false,
        edges: 0,
    };
    p.graph()?;
    Ok(p.edges)
}
