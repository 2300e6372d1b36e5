#include "mmc/ilp.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mmc/contraction.hpp"

namespace mmc::ilp {

int IlpModel::find(std::string_view name) const {
  for (std::size_t k = 0; k < variables.size(); ++k) {
    if (variables[k] == name) return static_cast<int>(k);
  }
  return -1;
}

std::size_t IlpModel::count_prefix(std::string_view prefix) const {
  return static_cast<std::size_t>(std::count_if(variables.begin(), variables.end(), [&](const std::string& v) {
    return v.starts_with(prefix);
  }));
}

namespace {

std::string key(std::string_view tag, int a, int b, int c) {
  std::string out(tag);
  out += '_' + std::to_string(a) + '_' + std::to_string(b) + '_' + std::to_string(c);
  return out;
}

class Builder {
 public:
  explicit Builder(const BinaryMatrix& m) : m_(m) {
    model_.rows = m.rows();
    model_.cols = m.cols();
    model_.stages = m.rows() + m.cols() - 1;
  }

  IlpModel build() {
    const int p = model_.rows;
    const int q = model_.cols;
    for (int i = 1; i < p; ++i) add_var("x_" + std::to_string(i));
    for (int j = 1; j < q; ++j) add_var("y_" + std::to_string(j));

    for (int i = 1; i <= p; ++i) {
      for (int j = 1; j <= q; ++j) {
        const int a = add_var(key("a", 1, i, j));
        add({"fix_" + std::to_string(i) + '_' + std::to_string(j), {{a, 1}}, Sense::Equal,
             m_(i - 1, j - 1) ? 1 : 0});
      }
    }

    int t = 1;
    for (int k = p - 1; k >= 1; --k, ++t) line_stage(t, k);
    for (int k = q - 1; k >= 1; --k, ++t) column_stage(t, k);

    objective(model_.stages);
    return std::move(model_);
  }

 private:
  int add_var(std::string name) {
    index_.emplace(name, static_cast<int>(model_.variables.size()));
    model_.variables.push_back(std::move(name));
    return static_cast<int>(model_.variables.size()) - 1;
  }
  int var(const std::string& name) const { return index_.at(name); }
  void add(Constraint c) { model_.constraints.push_back(std::move(c)); }

  // v = lhs * rhs for binaries.
  void mccormick(const std::string& tag, int v, int lhs, int rhs) {
    add({tag + "_u1", {{v, 1}, {lhs, -1}}, Sense::LessEqual, 0});
    add({tag + "_u2", {{v, 1}, {rhs, -1}}, Sense::LessEqual, 0});
    add({tag + "_l", {{v, 1}, {lhs, -1}, {rhs, -1}}, Sense::GreaterEqual, -1});
  }

  void bound_next(int t) {
    for (int i = 1; i <= model_.rows; ++i) {
      for (int j = 1; j <= model_.cols; ++j) {
        add({key("ub", t + 1, i, j), {{var(key("a", t + 1, i, j)), 1}}, Sense::LessEqual, 1});
      }
    }
  }

  // Transition t -> t+1 merging line k into line k+1 when x_k = 1.
  void line_stage(int t, int k) {
    const int p = model_.rows;
    const int q = model_.cols;
    const int x = var("x_" + std::to_string(k));
    for (int i = k + 1; i <= p; ++i) {
      for (int j = 1; j <= q; ++j) {
        const int r = add_var(key("r", t, i, j));
        mccormick(key("mc", t, i, j), r, var(key("a", t, i, j)), x);
      }
    }
    for (int i = 1; i <= p; ++i) {
      for (int j = 1; j <= q; ++j) {
        const int next = add_var(key("a", t + 1, i, j));
        std::vector<Term> terms{{next, 1}, {var(key("a", t, i, j)), -1}};
        if (i > k) terms.push_back({var(key("r", t, i, j)), 1});
        if (i >= k && i < p) terms.push_back({var(key("r", t, i + 1, j)), -1});
        add({key("st", t, i, j), std::move(terms), Sense::Equal, 0});
      }
    }
    bound_next(t);
  }

  void column_stage(int t, int k) {
    const int p = model_.rows;
    const int q = model_.cols;
    const int y = var("y_" + std::to_string(k));
    for (int i = 1; i <= p; ++i) {
      for (int j = k + 1; j <= q; ++j) {
        const int r = add_var(key("r", t, i, j));
        mccormick(key("mc", t, i, j), r, var(key("a", t, i, j)), y);
      }
    }
    for (int i = 1; i <= p; ++i) {
      for (int j = 1; j <= q; ++j) {
        const int next = add_var(key("a", t + 1, i, j));
        std::vector<Term> terms{{next, 1}, {var(key("a", t, i, j)), -1}};
        if (j > k) terms.push_back({var(key("r", t, i, j)), 1});
        if (j >= k && j < q) terms.push_back({var(key("r", t, i, j + 1)), -1});
        add({key("st", t, i, j), std::move(terms), Sense::Equal, 0});
      }
    }
    bound_next(t);
  }

  void objective(int last) {
    struct Direction {
      const char* tag;
      int di, dj;
    };
    static constexpr Direction kDirections[] = {{"e", 0, 1}, {"s", 1, 0}, {"se", 1, 1}, {"sw", 1, -1}};
    const int p = model_.rows;
    const int q = model_.cols;
    for (const Direction& d : kDirections) {
      for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= q; ++j) {
          const int i2 = i + d.di;
          const int j2 = j + d.dj;
          if (i2 < 1 || i2 > p || j2 < 1 || j2 > q) continue;
          const std::string suffix = std::string(d.tag) + '_' + std::to_string(i) + '_' + std::to_string(j);
          const int z = add_var("z_" + suffix);
          mccormick("zc_" + suffix, z, var(key("a", last, i, j)), var(key("a", last, i2, j2)));
          model_.objective.push_back({z, 1});
        }
      }
    }
  }

  const BinaryMatrix& m_;
  IlpModel model_;
  std::unordered_map<std::string, int> index_;
};

void write_expression(std::ostream& out, const IlpModel& model, const std::vector<Term>& terms,
                      std::size_t wrap) {
  if (terms.empty()) {
    out << "0 " << model.variables.front();
    return;
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Term& t = terms[k];
    if (k > 0 && wrap > 0 && k % wrap == 0) out << "\n   ";
    if (k == 0) {
      if (t.coef < 0) out << "- ";
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    const std::int64_t magnitude = t.coef < 0 ? -t.coef : t.coef;
    if (magnitude != 1) out << magnitude << ' ';
    out << model.variables[static_cast<std::size_t>(t.var)];
  }
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual:
      return " <= ";
    case Sense::GreaterEqual:
      return " >= ";
    case Sense::Equal:
      return " = ";
  }
  return " = ";
}

}  // namespace

IlpModel build_model(const BinaryMatrix& m) { return Builder(m).build(); }

void write_lp(const IlpModel& model, std::ostream& out) {
  out << "\\ Maximum matrix contraction, p=" << model.rows << " q=" << model.cols
      << " T=" << model.stages << '\n';
  out << "Maximize\n obj: ";
  write_expression(out, model, model.objective, 8);
  out << "\nSubject To\n";
  for (const Constraint& c : model.constraints) {
    out << ' ' << c.name << ": ";
    write_expression(out, model, c.terms, 0);
    out << sense_text(c.sense) << c.rhs << '\n';
  }
  out << "Binary\n";
  for (const std::string& v : model.variables) out << ' ' << v << '\n';
  out << "End\n";
}

std::string to_lp(const IlpModel& model) {
  std::ostringstream out;
  write_lp(model, out);
  return out.str();
}

namespace {

class LpReader {
 public:
  explicit LpReader(std::string_view text) : text_(text) {}

  IlpModel read() {
    enum class Section { None, Objective, Constraints, Binary, End } section = Section::None;
    std::vector<std::string> binaries;
    while (next_line()) {
      std::string_view line = trim(current_);
      if (line.empty()) continue;
      if (line.front() == '\\') {
        parse_header(line);
        continue;
      }
      if (line == "Maximize") {
        section = Section::Objective;
        continue;
      }
      if (line == "Subject To") {
        section = Section::Constraints;
        continue;
      }
      if (line == "Binary") {
        section = Section::Binary;
        continue;
      }
      if (line == "End") {
        section = Section::End;
        continue;
      }
      switch (section) {
        case Section::Objective: {
          if (line.starts_with("obj:")) line.remove_prefix(4);
          objective_text_ += ' ';
          objective_text_ += line;
          break;
        }
        case Section::Constraints:
          constraints_.push_back({std::string(line), line_no_});
          break;
        case Section::Binary:
          binaries.emplace_back(line);
          break;
        default:
          fail(line_no_, "content outside of a section");
      }
    }
    if (section != Section::End) fail(line_no_, "missing End");

    for (const std::string& b : binaries) {
      index_.emplace(b, static_cast<int>(model_.variables.size()));
      model_.variables.push_back(b);
    }
    model_.objective = parse_terms(objective_text_, objective_line_);
    model_.objective.erase(std::remove_if(model_.objective.begin(), model_.objective.end(),
                                          [](const Term& t) { return t.coef == 0; }),
                           model_.objective.end());
    for (const auto& [textline, no] : constraints_) model_.constraints.push_back(parse_constraint(textline, no));
    return std::move(model_);
  }

 private:
  [[noreturn]] static void fail(int line, const std::string& what) {
    throw std::runtime_error("LP line " + std::to_string(line) + ": " + what);
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  }

  bool next_line() {
    if (pos_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    current_ = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    ++line_no_;
    if (objective_line_ == 0 && current_.find("obj:") != std::string_view::npos) objective_line_ = line_no_;
    return true;
  }

  void parse_header(std::string_view line) {
    auto field = [&](std::string_view tag) {
      const std::size_t at = line.find(tag);
      if (at == std::string_view::npos) return 0;
      int v = 0;
      const char* first = line.data() + at + tag.size();
      std::from_chars(first, line.data() + line.size(), v);
      return v;
    };
    model_.rows = field("p=");
    model_.cols = field("q=");
    model_.stages = field("T=");
  }

  std::vector<Term> parse_terms(std::string_view s, int line) {
    std::vector<Term> terms;
    std::istringstream in{std::string(s)};
    std::string token;
    std::int64_t sign = 1;
    std::int64_t coef = 1;
    bool have_coef = false;
    while (in >> token) {
      if (token == "+") continue;
      if (token == "-") {
        sign = -sign;
        continue;
      }
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec == std::errc() && ptr == token.data() + token.size()) {
        coef = value;
        have_coef = true;
        continue;
      }
      const auto it = index_.find(token);
      if (it == index_.end()) fail(line, "unknown variable '" + token + "'");
      terms.push_back({it->second, sign * (have_coef ? coef : 1)});
      sign = 1;
      coef = 1;
      have_coef = false;
    }
    return terms;
  }

  Constraint parse_constraint(const std::string& text, int line) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) fail(line, "constraint without a name");
    Constraint c;
    c.name = std::string(trim(std::string_view(text).substr(0, colon)));
    std::string_view body = std::string_view(text).substr(colon + 1);
    std::size_t op = std::string_view::npos;
    std::size_t op_len = 0;
    for (const auto& [sym, sense] : {std::pair{"<=", Sense::LessEqual}, std::pair{">=", Sense::GreaterEqual}}) {
      const std::size_t at = body.find(sym);
      if (at != std::string_view::npos) {
        op = at;
        op_len = 2;
        c.sense = sense;
      }
    }
    if (op == std::string_view::npos) {
      op = body.find('=');
      op_len = 1;
      c.sense = Sense::Equal;
    }
    if (op == std::string_view::npos) fail(line, "constraint without a relation");
    c.terms = parse_terms(body.substr(0, op), line);
    const std::string_view rhs = trim(body.substr(op + op_len));
    const auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), c.rhs);
    if (ec != std::errc() || ptr != rhs.data() + rhs.size()) fail(line, "bad right-hand side");
    return c;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
  int objective_line_ = 0;
  std::string_view current_;
  std::string objective_text_;
  std::vector<std::pair<std::string, int>> constraints_;
  std::unordered_map<std::string, int> index_;
  IlpModel model_;
};

}  // namespace

IlpModel read_lp(std::string_view text) { return LpReader(text).read(); }

Evaluator::Evaluator(const IlpModel& model) : model_(model) {
  const std::size_t nvars = model.variables.size();
  std::vector<bool> known(nvars, false);
  for (std::size_t v = 0; v < nvars; ++v) {
    const std::string& name = model.variables[v];
    if (name.starts_with("x_") || name.starts_with("y_")) {
      const int idx = std::stoi(name.substr(2));
      auto& slots = name[0] == 'x' ? line_var_ : column_var_;
      if (static_cast<int>(slots.size()) < idx) slots.resize(static_cast<std::size_t>(idx), -1);
      slots[static_cast<std::size_t>(idx - 1)] = static_cast<int>(v);
      known[v] = true;
    }
  }

  // Product definitions: v - u - w >= -1 with unit coefficients.
  struct Product {
    int v, lhs, rhs;
  };
  std::vector<Product> products;
  for (const Constraint& c : model.constraints) {
    if (c.sense != Sense::GreaterEqual || c.rhs != -1 || c.terms.size() != 3) continue;
    if (c.terms[0].coef != 1 || c.terms[1].coef != -1 || c.terms[2].coef != -1) continue;
    products.push_back({c.terms[0].var, c.terms[1].var, c.terms[2].var});
  }

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t ci = 0; ci < model.constraints.size(); ++ci) {
      const Constraint& c = model.constraints[ci];
      if (c.sense != Sense::Equal) continue;
      int unknown = -1;
      int unknown_count = 0;
      for (const Term& t : c.terms) {
        if (!known[static_cast<std::size_t>(t.var)]) {
          unknown = t.var;
          ++unknown_count;
        }
      }
      if (unknown_count != 1) continue;
      const auto coef = std::find_if(c.terms.begin(), c.terms.end(), [&](const Term& t) { return t.var == unknown; })->coef;
      if (coef != 1 && coef != -1) continue;
      plan_.push_back({Step::Solve, unknown, static_cast<int>(ci), -1, -1});
      known[static_cast<std::size_t>(unknown)] = true;
      progress = true;
    }
    for (const Product& pr : products) {
      if (known[static_cast<std::size_t>(pr.v)]) continue;
      if (!known[static_cast<std::size_t>(pr.lhs)] || !known[static_cast<std::size_t>(pr.rhs)]) continue;
      plan_.push_back({Step::Product, pr.v, -1, pr.lhs, pr.rhs});
      known[static_cast<std::size_t>(pr.v)] = true;
      progress = true;
    }
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    if (!known[v]) throw DomainError("variable " + model.variables[v] + " is not determined by the decisions");
  }

  // Constraints that mention only a product variable and its operands.
  product_constraints_.resize(plan_.size());
  for (std::size_t s = 0; s < plan_.size(); ++s) {
    const Step& step = plan_[s];
    if (step.kind != Step::Product) continue;
    for (std::size_t ci = 0; ci < model.constraints.size(); ++ci) {
      const Constraint& c = model.constraints[ci];
      bool mentions = false;
      bool closed = true;
      for (const Term& t : c.terms) {
        if (t.var == step.var) mentions = true;
        else if (t.var != step.lhs && t.var != step.rhs) closed = false;
      }
      if (mentions && closed) product_constraints_[s].push_back(static_cast<int>(ci));
    }
  }
}

namespace {

bool satisfied(const Constraint& c, const std::vector<std::int64_t>& values) {
  std::int64_t lhs = 0;
  for (const Term& t : c.terms) lhs += t.coef * values[static_cast<std::size_t>(t.var)];
  switch (c.sense) {
    case Sense::LessEqual:
      return lhs <= c.rhs;
    case Sense::GreaterEqual:
      return lhs >= c.rhs;
    case Sense::Equal:
      return lhs == c.rhs;
  }
  return false;
}

}  // namespace

Evaluation Evaluator::evaluate(const Selection& decisions) const {
  std::vector<std::int64_t> values(model_.variables.size(), 0);
  for (int i : decisions.lines) {
    if (i < 1 || i > static_cast<int>(line_var_.size())) throw BoundsError("line decision out of range");
    values[static_cast<std::size_t>(line_var_[static_cast<std::size_t>(i - 1)])] = 1;
  }
  for (int j : decisions.columns) {
    if (j < 1 || j > static_cast<int>(column_var_.size())) throw BoundsError("column decision out of range");
    values[static_cast<std::size_t>(column_var_[static_cast<std::size_t>(j - 1)])] = 1;
  }

  Evaluation out;
  for (std::size_t s = 0; s < plan_.size(); ++s) {
    const Step& step = plan_[s];
    auto& v = values[static_cast<std::size_t>(step.var)];
    if (step.kind == Step::Product) {
      const std::int64_t a = values[static_cast<std::size_t>(step.lhs)];
      const std::int64_t b = values[static_cast<std::size_t>(step.rhs)];
      v = a * b;
      if ((a == 0 || a == 1) && (b == 0 || b == 1)) {
        for (std::int64_t candidate : {0, 1}) {
          v = candidate;
          bool ok = true;
          for (int ci : product_constraints_[s]) ok = ok && satisfied(model_.constraints[static_cast<std::size_t>(ci)], values);
          if (ok != (candidate == a * b)) out.products_exact = false;
        }
        v = a * b;
      }
      continue;
    }
    const Constraint& c = model_.constraints[static_cast<std::size_t>(step.constraint)];
    std::int64_t rest = 0;
    std::int64_t coef = 0;
    for (const Term& t : c.terms) {
      if (t.var == step.var) coef = t.coef;
      else rest += t.coef * values[static_cast<std::size_t>(t.var)];
    }
    v = (c.rhs - rest) / coef;
  }

  out.feasible = std::all_of(values.begin(), values.end(), [](std::int64_t v) { return v == 0 || v == 1; }) &&
                 std::all_of(model_.constraints.begin(), model_.constraints.end(),
                             [&](const Constraint& c) { return satisfied(c, values); });
  for (const Term& t : model_.objective) out.objective += t.coef * values[static_cast<std::size_t>(t.var)];
  return out;
}

OracleReport check_formulation(const BinaryMatrix& m, const IlpModel& model, const OracleOptions& options) {
  const int line_gaps = m.rows() - 1;
  const int col_gaps = m.cols() - 1;
  if (line_gaps + col_gaps > options.max_free_gaps) {
    throw GuardRefusal("formulation check over " + std::to_string(line_gaps + col_gaps) +
                       " gaps exceeds the guard of " + std::to_string(options.max_free_gaps));
  }
  const Evaluator evaluator(model);
  const std::int64_t total = std::int64_t{1} << (line_gaps + col_gaps);

  OracleReport report;
  report.assignments = total;
  std::vector<std::string> mismatch(static_cast<std::size_t>(total));
  std::vector<std::int64_t> objective(static_cast<std::size_t>(total), -1);

#pragma omp parallel for schedule(dynamic, 16) if (options.execution == Execution::Parallel)
  for (std::int64_t mask = 0; mask < total; ++mask) {
    Selection sel;
    for (int k = 0; k < line_gaps; ++k) {
      if ((mask >> k) & 1) sel.lines.push_back(k + 1);
    }
    for (int k = 0; k < col_gaps; ++k) {
      if ((mask >> (line_gaps + k)) & 1) sel.columns.push_back(k + 1);
    }
    const Evaluation e = evaluator.evaluate(sel);
    const IntegerMatrix raw = contract(m, sel);
    const bool valid = raw.is_binary();
    std::string& why = mismatch[static_cast<std::size_t>(mask)];
    if (e.feasible != valid) {
      why = "feasibility differs from validity";
    } else if (valid) {
      const std::int64_t d = density(trim(raw, sel));
      if (e.objective != d) why = "objective " + std::to_string(e.objective) + " != density " + std::to_string(d);
      else if (!e.products_exact) why = "product linearization admits a wrong value";
      objective[static_cast<std::size_t>(mask)] = e.objective;
    }
  }

  for (std::int64_t mask = 0; mask < total; ++mask) {
    const std::string& why = mismatch[static_cast<std::size_t>(mask)];
    if (!why.empty() && report.agrees) {
      report.agrees = false;
      report.first_mismatch = "assignment " + std::to_string(mask) + ": " + why;
    }
    const std::int64_t obj = objective[static_cast<std::size_t>(mask)];
    if (obj >= 0) {
      ++report.feasible;
      report.best_objective = std::max(report.best_objective, obj);
    }
  }
  return report;
}

bool model_oracle_check(const BinaryMatrix& m, const OracleOptions& options) {
  const IlpModel model = build_model(m);
  return check_formulation(m, model, options).agrees;
}

}  // namespace mmc::ilp
