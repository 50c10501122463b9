//! Property tests for the expression parser against a shunting-yard evaluator.

use dirac_susy::expr::{parse, ExprAst, Func};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Token {
    Num(f64),
    X,
    Op(char),
    Func(&'static str),
    Open,
    Close,
}

fn lex(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "x" {
                out.push(Token::X);
            } else {
                let f = Func::ALL.iter().find(|f| f.name() == word).unwrap();
                out.push(Token::Func(f.name()));
            }
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else {
            out.push(Token::Op(c));
            i += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
enum StackOp {
    Bin(char),
    Neg,
    Func(&'static str),
    Open,
}

fn precedence(op: StackOp) -> u8 {
    match op {
        StackOp::Bin('+' | '-') => 1,
        StackOp::Bin('*' | '/') => 2,
        StackOp::Neg => 3,
        StackOp::Bin('^') => 4,
        _ => 0,
    }
}

fn apply_func(name: &str, v: f64) -> f64 {
    match name {
        "tanh" => v.tanh(),
        "cosh" => v.cosh(),
        "sinh" => v.sinh(),
        "sech" => 1.0 / v.cosh(),
        "exp" => v.exp(),
        "sqrt" => v.sqrt(),
        "abs" => v.abs(),
        _ => unreachable!(),
    }
}

/// Reference evaluation. The flag records any non-finite intermediate value.
struct Values {
    stack: Vec<f64>,
    non_finite: bool,
}

impl Values {
    fn push(&mut self, v: f64) {
        self.non_finite |= !v.is_finite();
        self.stack.push(v);
    }

    fn reduce(&mut self, op: StackOp) {
        match op {
            StackOp::Neg => {
                let a = self.stack.pop().unwrap();
                self.push(-a);
            }
            StackOp::Func(name) => {
                let a = self.stack.pop().unwrap();
                self.push(apply_func(name, a));
            }
            StackOp::Bin(c) => {
                let b = self.stack.pop().unwrap();
                let a = self.stack.pop().unwrap();
                self.push(match c {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    '/' => a / b,
                    '^' => a.powf(b),
                    _ => unreachable!(),
                });
            }
            StackOp::Open => unreachable!(),
        }
    }
}

fn shunting_yard(src: &str, x: f64) -> (f64, bool) {
    let mut values = Values {
        stack: Vec::new(),
        non_finite: false,
    };
    let mut ops: Vec<StackOp> = Vec::new();
    let mut expect_operand = true;
    for tok in lex(src) {
        match tok {
            Token::Num(v) => {
                values.push(v);
                expect_operand = false;
            }
            Token::X => {
                values.push(x);
                expect_operand = false;
            }
            Token::Func(name) => ops.push(StackOp::Func(name)),
            Token::Open => {
                ops.push(StackOp::Open);
                expect_operand = true;
            }
            Token::Close => {
                while let Some(op) = ops.pop() {
                    if let StackOp::Open = op {
                        break;
                    }
                    values.reduce(op);
                }
                if let Some(StackOp::Func(_)) = ops.last() {
                    let f = ops.pop().unwrap();
                    values.reduce(f);
                }
                expect_operand = false;
            }
            Token::Op('-') if expect_operand => ops.push(StackOp::Neg),
            Token::Op(c) => {
                let incoming = StackOp::Bin(c);
                let p = precedence(incoming);
                while let Some(&top) = ops.last() {
                    let q = precedence(top);
                    let pops = if c == '^' { q > p } else { q >= p };
                    if q == 0 || !pops {
                        break;
                    }
                    ops.pop();
                    values.reduce(top);
                }
                ops.push(incoming);
                expect_operand = true;
            }
        }
    }
    while let Some(op) = ops.pop() {
        values.reduce(op);
    }
    assert_eq!(values.stack.len(), 1);
    (values.stack[0], values.non_finite)
}

/// Random well-formed source text using the full precedence grammar.
fn source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| format!("{}", n as f64 / 4.0)),
        Just("x".to_string()),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            (
                inner.clone(),
                prop::sample::select(vec!['+', '-', '*', '/', '^']),
                inner.clone()
            )
                .prop_map(|(a, op, b)| format!("{a} {op} {b}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            inner.clone().prop_map(|a| format!("({a})")),
            (prop::sample::select(Func::ALL.to_vec()), inner)
                .prop_map(|(f, a)| format!("{}({a})", f.name())),
        ]
    })
}

fn ast() -> impl Strategy<Value = ExprAst> {
    let leaf = prop_oneof![(0.0f64..1e6).prop_map(ExprAst::Number), Just(ExprAst::X),];
    leaf.prop_recursive(5, 40, 3, |inner| {
        use dirac_susy::expr::BinOp;
        prop_oneof![
            (
                prop::sample::select(vec![
                    BinOp::Add,
                    BinOp::Sub,
                    BinOp::Mul,
                    BinOp::Div,
                    BinOp::Pow
                ]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| ExprAst::Binary(op, Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| ExprAst::Neg(Box::new(a))),
            (prop::sample::select(Func::ALL.to_vec()), inner)
                .prop_map(|(f, a)| ExprAst::Call(f, Box::new(a))),
        ]
    })
}

proptest! {
    #[test]
    fn agrees_with_shunting_yard(src in source(), x in -3.0f64..3.0) {
        let ast = parse(&src).unwrap();
        let (reference, non_finite) = shunting_yard(&src, x);
        match ast.eval(x) {
            Ok(v) => prop_assert_eq!(v.to_bits(), reference.to_bits(), "{} at x = {}", src, x),
            Err(_) => prop_assert!(non_finite, "{} at x = {}", src, x),
        }
    }

    #[test]
    fn parser_is_total(src in "[-+*/^() .0-9a-z]{0,40}") {
        let _ = parse(&src);
    }

    #[test]
    fn parser_is_total_on_arbitrary_text(src in any::<String>()) {
        let _ = parse(&src);
    }

    #[test]
    fn canonical_print_reparses(tree in ast()) {
        let printed = tree.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(&reparsed, &tree);
        prop_assert_eq!(reparsed.to_string(), printed);
    }
}
