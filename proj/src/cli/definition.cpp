#include <fstream>
#include <map>
#include <sstream>

#include "tq/cli/cli.hpp"
#include "tq/sym/calculus.hpp"
#include "tq/sym/parse.hpp"
#include "tq/sym/simplify.hpp"

namespace tq::cli {

using sym::Expr;

namespace {

struct Line {
  std::size_t no = 0;
  std::size_t col = 1;  // column of `text` in the file
  std::string text;
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// piece of a line with its column
struct Piece {
  std::string text;
  std::size_t col;
};

Piece sub(const Line& l, std::size_t from, std::size_t len = std::string::npos) {
  std::string raw = l.text.substr(from, len);
  auto a = raw.find_first_not_of(" \t");
  if (a == std::string::npos) return {"", l.col + from};
  return {trim(raw), l.col + from + a};
}

std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= p.text.size(); ++i) {
    char c = i < p.text.size() ? p.text[i] : sep;
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      std::string raw = p.text.substr(start, i - start);
      auto a = raw.find_first_not_of(" \t");
      out.push_back({trim(raw), p.col + start + (a == std::string::npos ? 0 : a)});
      start = i + 1;
    }
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& w) {
  return s.compare(0, w.size(), w) == 0 && (s.size() == w.size() || s[w.size()] == ' ' || s[w.size()] == '\t');
}

}  // namespace

ext::Form parse_one_form(const std::string& text, const ext::ChartPtr& chart) {
  sym::Context c = chart->context();
  std::vector<std::string> ds;
  for (const auto& co : chart->coords()) {
    std::string d = "d" + co.name;
    if (c.is_declared(d)) throw Error("'" + d + "' is already declared; cannot read 1-forms");
    c.parameter(d);
    ds.push_back(d);
  }
  Expr e = sym::parse(text, c);
  std::vector<Expr> coef;
  std::vector<Expr> back;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Expr k = sym::simplify(sym::differentiate(e, ds[i], c), c);
    for (const auto& d : ds) {
      if (sym::depends_on(k, d)) throw Error("'" + text + "' is not linear in the coordinate differentials");
    }
    coef.push_back(k);
    back.push_back(sym::mul({k, sym::sym(ds[i])}));
  }
  back.push_back(sym::mul({sym::num(-1), e}));
  if (!sym::simplify(sym::add(back), c).is_zero()) {
    throw Error("'" + text + "' has a part without a coordinate differential");
  }
  return ext::Form::one(chart, coef);
}

Definition parse_definition(const std::string& text, const std::string& source) {
  static const std::vector<std::string> sections = {"coordinates", "parameters", "options", "functions",
                                                    "coframe",     "potential",  "expected"};
  std::map<std::string, std::vector<Line>> body;
  Definition out;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  std::size_t no = 0;
  auto fail = [&](std::size_t line, std::size_t col, const std::string& what) -> DefinitionError {
    return DefinitionError(source, line, col, what);
  };
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    if (trim(raw).empty()) continue;
    bool indented = raw[0] == ' ' || raw[0] == '\t';
    std::size_t col = raw.find_first_not_of(" \t") + 1;
    std::string t = trim(raw);
    if (!indented) {
      if (starts_with(t, "name")) {
        out.name = trim(t.substr(4));
        current.clear();
        continue;
      }
      if (std::find(sections.begin(), sections.end(), t) == sections.end()) {
        throw fail(no, col, "unknown section '" + t + "'");
      }
      if (body.count(t)) throw fail(no, col, "section '" + t + "' appears twice");
      current = t;
      body[t];
      continue;
    }
    if (current.empty()) throw fail(no, col, "entry outside a section");
    body[current].push_back({no, col, t});
  }
  if (!body.count("coordinates")) throw fail(no + 1, 1, "missing 'coordinates' section");
  if (!body.count("coframe")) throw fail(no + 1, 1, "missing 'coframe' section");

  sym::Context ctx;
  auto expr = [&](const Piece& p, const sym::Context& c, std::size_t line) {
    try {
      return sym::parse(p.text, c);
    } catch (const UndeclaredSymbolError& e) {
      throw fail(line, p.col + e.offset(), "undeclared symbol '" + e.name() + "'");
    } catch (const ParseError& e) {
      throw fail(line, p.col + e.offset(), e.what());
    }
  };

  // declarations first: expressions may mention any declared name
  struct CoordLine {
    Line line;
    std::string name;
    std::vector<Piece> attrs;
  };
  std::vector<CoordLine> coords;
  for (const auto& l : body["coordinates"]) {
    auto colon = l.text.find(':');
    Piece name = sub(l, 0, colon);
    if (name.text.empty() || name.text.find(' ') != std::string::npos) throw fail(l.no, l.col, "bad coordinate name");
    ctx.coordinate(name.text);
    coords.push_back({l, name.text, colon == std::string::npos ? std::vector<Piece>{} : split(sub(l, colon + 1), ';')});
  }
  std::vector<std::pair<Line, Piece>> defs;
  std::vector<std::pair<Line, std::vector<Piece>>> param_attrs;
  for (const auto& l : body["parameters"]) {
    auto def = l.text.find(":=");
    if (def != std::string::npos) {
      Piece name = sub(l, 0, def);
      ctx.parameter(name.text);
      defs.push_back({l, sub(l, def + 2)});
      continue;
    }
    auto colon = l.text.find(':');
    Piece name = sub(l, 0, colon);
    ctx.parameter(name.text);
    std::vector<Piece> attrs = colon == std::string::npos ? std::vector<Piece>{} : split(sub(l, colon + 1), ';');
    attrs.insert(attrs.begin(), name);
    param_attrs.push_back({l, attrs});
  }
  for (const auto& l : body["options"]) {
    if (l.text == "generic-nonzero") {
      ctx.generic_nonzero(true);
    } else if (l.text == "linearized") {
      ctx.linearized(true);
    } else {
      throw fail(l.no, l.col, "unknown option '" + l.text + "'");
    }
  }
  for (const auto& [l, attrs] : param_attrs) {
    const std::string& name = attrs[0].text;
    for (std::size_t i = 1; i < attrs.size(); ++i) {
      const auto& a = attrs[i].text;
      if (a == "positive") {
        ctx.positive(name);
      } else if (a == "nonzero") {
        ctx.nonzero(sym::sym(name), name + "!=0");
      } else if (a == "integer") {
        ctx.integer(name);
      } else if (a == "linear") {
        ctx.tag(name);
      } else {
        throw fail(l.no, attrs[i].col, "unknown parameter attribute '" + a + "'");
      }
    }
  }
  std::vector<std::pair<Line, Piece>> series;
  for (const auto& l : body["functions"]) {
    auto open = l.text.find('('), close = l.text.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw fail(l.no, l.col, "expected name(arg, ...)");
    }
    std::string name = trim(l.text.substr(0, open));
    std::vector<std::string> args;
    for (const auto& p : split(sub(l, open + 1, close - open - 1), ',')) {
      if (!ctx.is_coordinate(p.text)) throw fail(l.no, p.col, "'" + p.text + "' is not a coordinate");
      args.push_back(p.text);
    }
    ctx.function(name, args);
    Piece rest = sub(l, close + 1);
    if (rest.text.empty()) continue;
    if (rest.text[0] != ':') throw fail(l.no, rest.col, "expected ': series <expr>'");
    Piece s = sub(l, close + 1 + l.text.substr(close + 1).find(':') + 1);
    if (!starts_with(s.text, "series")) throw fail(l.no, s.col, "expected 'series'");
    auto off = s.text.find_first_not_of(" \t", 6);
    Line named = l;
    named.text = name;
    series.push_back({named, {s.text.substr(off), s.col + off}});
  }
  for (const auto& [l, p] : defs) ctx.define(trim(l.text.substr(0, l.text.find(":="))), expr(p, ctx, l.no));
  for (const auto& [l, p] : series) ctx.series(l.text, expr(p, ctx, l.no));

  std::vector<ext::Coordinate> chart_coords;
  for (const auto& c : coords) {
    ext::Coordinate co{c.name, std::nullopt, std::nullopt, std::nullopt, {}};
    for (const auto& a : c.attrs) {
      if (a.text == "positive") {
        ctx.positive(c.name);
      } else if (starts_with(a.text, "range")) {
        auto dots = a.text.find("..");
        if (dots == std::string::npos) throw fail(c.line.no, a.col, "expected 'range <lo> .. <hi>'");
        Piece lo{trim(a.text.substr(5, dots - 5)), a.col + a.text.find_first_not_of(" \t", 5)};
        Piece hi{trim(a.text.substr(dots + 2)), a.col + a.text.find_first_not_of(" \t", dots + 2)};
        if (lo.text != "-inf") co.lo = expr(lo, ctx, c.line.no);
        if (hi.text != "inf") co.hi = expr(hi, ctx, c.line.no);
        ctx.range(c.name, co.lo, co.hi, c.name + " range");
      } else if (starts_with(a.text, "period")) {
        co.period = expr({trim(a.text.substr(6)), a.col + a.text.find_first_not_of(" \t", 6)}, ctx, c.line.no);
      } else if (starts_with(a.text, "exclude")) {
        Piece rest{trim(a.text.substr(7)), a.col + a.text.find_first_not_of(" \t", 7)};
        for (const auto& p : split(rest, ',')) co.excluded.push_back(expr(p, ctx, c.line.no));
      } else {
        throw fail(c.line.no, a.col, "unknown coordinate attribute '" + a.text + "'");
      }
    }
    chart_coords.push_back(co);
  }
  out.chart = ext::make_chart(chart_coords, ctx);

  auto form = [&](const Line& l) {
    try {
      return parse_one_form(l.text, out.chart);
    } catch (const UndeclaredSymbolError& e) {
      throw fail(l.no, l.col + e.offset(), "undeclared symbol '" + e.name() + "'");
    } catch (const ParseError& e) {
      throw fail(l.no, l.col + e.offset(), e.what());
    } catch (const Error& e) {
      throw fail(l.no, l.col, e.what());
    }
  };
  const auto& fl = body["coframe"];
  if (fl.size() != out.chart->dim()) {
    throw fail(fl.empty() ? no : fl.back().no, 1,
               "coframe needs " + std::to_string(out.chart->dim()) + " 1-forms, got " + std::to_string(fl.size()));
  }
  ext::Matrix rows;
  for (const auto& l : fl) {
    ext::Form f = form(l);
    std::vector<Expr> row;
    for (std::size_t mu = 0; mu < out.chart->dim(); ++mu) row.push_back(f.component({static_cast<int>(mu)}));
    rows.push_back(row);
  }
  try {
    out.coframe = std::make_shared<ext::Coframe>(out.chart, rows);
  } catch (const Error& e) {
    throw fail(fl.front().no, 1, std::string("coframe: ") + e.what());
  }
  if (body.count("potential")) {
    const auto& pl = body["potential"];
    if (pl.size() != 1) throw fail(pl.empty() ? no : pl.back().no, 1, "potential takes one 1-form");
    out.potential = form(pl[0]).with_imaginary(true);
  }
  for (const auto& l : body["expected"]) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) throw fail(l.no, l.col, "expected 'key = value'");
    out.expected.push_back({trim(l.text.substr(0, eq)), trim(l.text.substr(eq + 1))});
  }
  return out;
}

Definition load_definition(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  Definition d = parse_definition(ss.str(), path);
  if (d.name.empty()) {
    auto slash = path.find_last_of('/');
    d.name = path.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  return d;
}

}  // namespace tq::cli
