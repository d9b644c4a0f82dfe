#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dichogen/genlang.hpp"

namespace dichogen::lang {

namespace {

std::vector<Value> range(Value first, Value last) {
  std::vector<Value> out;
  for (Value v = first; v <= last; ++v) out.push_back(v);
  return out;
}

SpecConfig mod_spec(std::string expr, Value a, Value b, Value modulus) {
  SpecConfig config;
  config.expr = std::move(expr);
  config.a = a;
  config.b = b;
  config.modulus = modulus;
  return config;
}

std::vector<BuiltinInfo> make_registry() {
  std::vector<BuiltinInfo> registry;
  const auto add = [&](std::string name, std::string formula, SpecConfig config) {
    registry.push_back({std::move(name), std::move(formula), std::move(config)});
  };

  add("ex_a7", "(x+y+1) mod 7", mod_spec("(x+y+1)%7", 3, 5, 7));
  add("ex_m4", "(x+3y+3) mod 4", mod_spec("(x+3*y+3)%4", 3, 2, 4));
  add("ex_b7", "(3x+5y+2) mod 7", mod_spec("(3*x+5*y+2)%7", 3, 4, 7));
  add("ex_m9", "(7x+4y) mod 9", mod_spec("(7*x+4*y)%9", 2, 3, 9));
  add("ex_m9s", "(7x+4y+5) mod 9", mod_spec("(7*x+4*y+5)%9", 2, 5, 9));
  add("ex_cubic", "(x^3+2xy^2+x^2y+2y^3+5x^2+2xy+7y^2+6x+6y+7) mod 9",
      mod_spec("(x^3+2*x*y^2+x^2*y+2*y^3+5*x^2+2*x*y+7*y^2+6*x+6*y+7)%9", 1, 8, 9));
  {
    SpecConfig mat;
    mat.expr = "A[x,y]";
    mat.a = 1;
    mat.b = 4;
    mat.alphabet = range(1, 5);
    mat.matrix = Matrix{{1, 4, 2, 5, 3},
                        {4, 1, 3, 2, 5},
                        {5, 2, 4, 3, 1},
                        {3, 5, 1, 4, 2},
                        {2, 3, 5, 1, 4}};
    add("ex_mat", "A[x,y] for a fixed 5x5 Latin square", std::move(mat));
  }
  add("ex_piecewise", "(3x+4y+1) mod 9 if x^2+y^3 = 1 mod 8, else (7x+7y+4) mod 9",
      mod_spec("if((x^2+y^3)%8==1, (3*x+4*y+1)%9, (7*x+7*y+4)%9)", 3, 4, 9));
  add("ex_altsum", "altsum(31x+35y+47) mod 9", mod_spec("altsum(31*x+35*y+47)%9", 18, 11, 9));
  {
    SpecConfig floor7;
    floor7.expr = "((fdiv(x^2,y)+fdiv(y^2,x))%7)+1";
    floor7.a = 3;
    floor7.b = 4;
    floor7.alphabet = range(1, 7);
    add("ex_floor7", "([x^2/y]+[y^2/x]) mod 7 + 1", std::move(floor7));
  }
  add("ex_floor10", "([x^2/(y+1)]+3) mod 10", mod_spec("(fdiv(x^2,y+1)+3)%10", 3, 4, 10));
  add("ex_gcd", "gcd(3x+4y+1, xy+y^2+4) mod 5", mod_spec("gcd(3*x+4*y+1,x*y+y^2+4)%5", 3, 4, 5));
  {
    SpecConfig abs;
    abs.expr = "abs(x-y+1)";
    abs.a = 2;
    abs.b = 7;
    add("ex_abs", "|x-y+1|", std::move(abs));
  }
  add("ex_r48", "(3x+2y+7) mod 8", mod_spec("(3*x+2*y+7)%8", 1, 6, 8));
  return registry;
}

const std::set<std::string, std::less<>> kKnownKeys = {"expr", "a", "b", "modulus", "alphabet",
                                                       "matrix"};

Value parse_int(std::string_view text, std::string_view key) {
  const auto first = text.find_first_not_of(" \t\r");
  const auto last = text.find_last_not_of(" \t\r");
  if (first == std::string_view::npos) throw SpecError("key \"" + std::string(key) + "\": empty value");
  text = text.substr(first, last - first + 1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  Value value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SpecError("key \"" + std::string(key) + "\": \"" + std::string(text) +
                    "\" is not an integer");
  }
  return value;
}

std::vector<Value> parse_int_list(std::string_view text, std::string_view key) {
  std::vector<Value> out;
  std::string token;
  for (char c : std::string(text) + ",") {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!token.empty()) out.push_back(parse_int(token, key));
      token.clear();
    } else {
      token += c;
    }
  }
  return out;
}

// Checks the required keys once the expression itself has parsed.
SpecConfig finish(const std::optional<std::string>& expr, std::optional<Value> a,
                  std::optional<Value> b, SpecConfig partial) {
  if (!expr) throw SpecError("spec document: missing required key \"expr\"");
  parse(*expr);
  if (!a) throw SpecError("spec document: missing required key \"a\"");
  if (!b) throw SpecError("spec document: missing required key \"b\"");
  partial.expr = *expr;
  partial.a = *a;
  partial.b = *b;
  validate(partial);
  return partial;
}

SpecConfig parse_json_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("spec document: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("spec document: expected a JSON object");

  std::optional<std::string> expr;
  std::optional<Value> a, b;
  SpecConfig partial;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (!kKnownKeys.contains(key)) throw SpecError("spec document: unknown key \"" + key + "\"");
      if (key == "expr") expr = value.get<std::string>();
      if (key == "a") a = value.get<Value>();
      if (key == "b") b = value.get<Value>();
      if (key == "modulus") partial.modulus = value.get<Value>();
      if (key == "alphabet") partial.alphabet = value.get<std::vector<Value>>();
      if (key == "matrix") partial.matrix = value.get<Matrix>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("spec document: wrong value type: ") + e.what());
  }
  return finish(expr, a, b, std::move(partial));
}

SpecConfig parse_text_document(std::string_view text) {
  static const std::regex kEntry(R"(^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(:|=(?!=))\s*(.*?)\s*$)");
  std::optional<std::string> expr;
  std::optional<Value> a, b;
  SpecConfig partial;
  bool first_entry = true;

  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, kEntry)) {
      if (!first_entry) throw SpecError("spec document: expected \"key = value\", got \"" + line + "\"");
      const auto stop = line.find_last_not_of(" \t\r");
      expr = line.substr(start, stop - start + 1);
      first_entry = false;
      continue;
    }
    first_entry = false;
    const std::string key = m[1];
    const std::string value = m[3];
    if (!kKnownKeys.contains(key)) throw SpecError("spec document: unknown key \"" + key + "\"");
    if (key == "expr") expr = value;
    if (key == "a") a = parse_int(value, key);
    if (key == "b") b = parse_int(value, key);
    if (key == "modulus") partial.modulus = parse_int(value, key);
    if (key == "alphabet") partial.alphabet = parse_int_list(value, key);
    if (key == "matrix") {
      Matrix matrix;
      std::istringstream rows(value);
      std::string row;
      while (std::getline(rows, row, ';')) matrix.push_back(parse_int_list(row, key));
      partial.matrix = std::move(matrix);
    }
  }
  return finish(expr, a, b, std::move(partial));
}

}  // namespace

std::optional<std::vector<Value>> effective_alphabet(const SpecConfig& config) {
  std::vector<Value> values;
  if (config.alphabet) {
    values = *config.alphabet;
  } else if (config.modulus) {
    const Value m = *config.modulus;
    values = range(0, (m < 0 ? -m : m) - 1);
  } else {
    return std::nullopt;
  }
  values.push_back(config.a);
  values.push_back(config.b);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

void validate(const SpecConfig& config) {
  const Ast ast = parse(config.expr);
  if (uses_matrix(ast) && !config.matrix) {
    throw SpecError("spec: expression uses A[x,y] but no matrix is given");
  }
  if (!uses_matrix(ast) && config.matrix) {
    throw SpecError("spec: a matrix is given but the expression never uses A[x,y]");
  }
  if (config.matrix) {
    if (config.matrix->empty() || config.matrix->front().empty()) {
      throw SpecError("spec: matrix must be non-empty");
    }
    const std::size_t columns = config.matrix->front().size();
    for (const auto& r : *config.matrix) {
      if (r.size() != columns) throw SpecError("spec: matrix rows must all have the same length");
    }
  }
  if (config.modulus && (*config.modulus == 0 || *config.modulus > (Value{1} << 24))) {
    throw SpecError("spec: modulus must be nonzero and at most 2^24");
  }
  if (config.alphabet && config.alphabet->empty()) {
    throw SpecError("spec: alphabet must be non-empty");
  }
}

GeneratorSpec compile(const SpecConfig& config) {
  validate(config);
  auto ast = std::make_shared<const Ast>(parse(config.expr));
  std::shared_ptr<const Matrix> matrix;
  if (config.matrix) matrix = std::make_shared<const Matrix>(*config.matrix);

  GeneratorSpec spec;
  spec.op.eval = [ast, matrix](Value x, Value y) { return eval_ast(*ast, x, y, matrix.get()); };
  spec.op.alphabet = effective_alphabet(config);
  spec.a = config.a;
  spec.b = config.b;
  return spec;
}

const std::vector<BuiltinInfo>& builtin_registry() {
  static const std::vector<BuiltinInfo> registry = make_registry();
  return registry;
}

SpecConfig builtin(std::string_view name) {
  std::string keys;
  for (const BuiltinInfo& info : builtin_registry()) {
    if (info.name == name) return info.config;
    keys += (keys.empty() ? "" : ", ") + info.name;
  }
  throw SpecError("unknown builtin \"" + std::string(name) + "\"; available: " + keys);
}

SpecConfig parse_spec_document(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') return parse_json_document(text);
  return parse_text_document(text);
}

SpecConfig load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open spec file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_document(buffer.str());
}

std::string to_json(const SpecConfig& config) {
  nlohmann::ordered_json doc;
  doc["expr"] = config.expr;
  doc["a"] = config.a;
  doc["b"] = config.b;
  if (config.modulus) doc["modulus"] = *config.modulus;
  if (config.alphabet) doc["alphabet"] = *config.alphabet;
  if (config.matrix) doc["matrix"] = *config.matrix;
  return doc.dump();
}

}  // namespace dichogen::lang
