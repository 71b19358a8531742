#include "probemax/instance_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "probemax/error.hpp"

namespace probemax {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(std::string_view field, std::string_view what) const {
    std::ostringstream msg;
    msg << "line " << line_ << ", field '" << field << "': " << what;
    throw ProbeError(ErrorCode::kParse, msg.str());
  }

  double number(std::string_view field, std::string_view text) const {
    double value = 0.0;
    if (!parse_double(text, value)) fail(field, "expected a finite number, got '" + std::string(text) + "'");
    return value;
  }

  std::vector<double> list(std::string_view field, std::string_view text) const {
    std::vector<double> out;
    for (std::string_view item : split(text, ',')) out.push_back(number(field, item));
    return out;
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Distribution parse_dist(const LineParser& lp, const std::vector<std::string_view>& tokens) {
  if (tokens.size() < 2) lp.fail("kind", "missing distribution kind");
  const std::string_view kind = tokens[1];

  std::map<std::string, std::string_view, std::less<>> fields;
  for (std::size_t t = 2; t < tokens.size(); ++t) {
    const std::size_t eq = tokens[t].find('=');
    if (eq == std::string_view::npos || eq == 0) {
      lp.fail(tokens[t], "expected name=value");
    }
    const std::string name(tokens[t].substr(0, eq));
    if (!fields.emplace(name, tokens[t].substr(eq + 1)).second) {
      lp.fail(name, "given more than once");
    }
  }

  std::vector<std::string_view> allowed;
  if (kind == "discrete") {
    allowed = {"values", "probs"};
  } else if (kind == "uniform") {
    allowed = {"a", "b"};
  } else if (kind == "exponential") {
    allowed = {"rate"};
  } else {
    lp.fail("kind", "unknown distribution kind '" + std::string(kind) + "'");
  }
  for (const auto& [name, value] : fields) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      lp.fail(name, "not a parameter of " + std::string(kind));
    }
  }
  auto field = [&](std::string_view name) {
    const auto it = fields.find(name);
    if (it == fields.end()) lp.fail(name, "missing");
    return it->second;
  };

  try {
    if (kind == "discrete") {
      const std::vector<double> values = lp.list("values", field("values"));
      const std::vector<double> probs = lp.list("probs", field("probs"));
      if (values.size() != probs.size()) {
        lp.fail("probs", "expected one probability per value");
      }
      std::vector<Atom> atoms;
      for (std::size_t i = 0; i < values.size(); ++i) atoms.push_back({values[i], probs[i]});
      return Distribution::discrete(std::move(atoms));
    }
    if (kind == "uniform") {
      return Distribution::uniform(lp.number("a", field("a")), lp.number("b", field("b")));
    }
    return Distribution::exponential(lp.number("rate", field("rate")));
  } catch (const ProbeError& e) {
    if (e.code() == ErrorCode::kParse) throw;
    std::ostringstream msg;
    msg << "line " << lp.line() << ": " << e.detail();
    throw ProbeError(e.code(), msg.str());
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
    return false;
  }
  out = value;
  return true;
}

Instance parse_instance(std::string_view text) {
  bool seen_header = false;
  std::optional<std::size_t> k;
  std::vector<Distribution> dists;

  const std::vector<std::string_view> lines = split(text, '\n');
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    std::string_view line = lines[idx];
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::vector<std::string_view> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const LineParser lp(idx + 1);

    if (!seen_header) {
      if (tokens.size() != 2 || tokens[0] != "probemax-instance" || tokens[1] != "v1") {
        lp.fail("header", "expected '" + std::string(kInstanceHeader) + "'");
      }
      seen_header = true;
    } else if (tokens[0] == "k") {
      if (k) lp.fail("k", "given more than once");
      if (tokens.size() != 2) lp.fail("k", "expected a single integer");
      std::size_t value = 0;
      const auto res = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), value);
      if (res.ec != std::errc() || res.ptr != tokens[1].data() + tokens[1].size()) {
        lp.fail("k", "expected a non-negative integer, got '" + std::string(tokens[1]) + "'");
      }
      k = value;
    } else if (tokens[0] == "dist") {
      dists.push_back(parse_dist(lp, tokens));
    } else {
      lp.fail(tokens[0], "unknown directive");
    }
  }
  if (!seen_header) {
    throw ProbeError(ErrorCode::kParse, "line 1, field 'header': empty input");
  }
  if (!k) throw ProbeError(ErrorCode::kParse, "field 'k': missing");
  return Instance(std::move(dists), *k);
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ProbeError(ErrorCode::kInvalidArgument, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string emit_instance(const Instance& inst) {
  std::ostringstream out;
  out << kInstanceHeader << '\n' << "k " << inst.k() << '\n';
  for (const Distribution& d : inst.dists()) {
    out << "dist ";
    if (const auto* disc = d.as<Distribution::Discrete>()) {
      out << "discrete values=";
      for (std::size_t i = 0; i < disc->atoms.size(); ++i) {
        out << (i ? "," : "") << format_double(disc->atoms[i].value);
      }
      out << " probs=";
      for (std::size_t i = 0; i < disc->atoms.size(); ++i) {
        out << (i ? "," : "") << format_double(disc->atoms[i].prob);
      }
    } else if (const auto* uni = d.as<Distribution::Uniform>()) {
      out << "uniform a=" << format_double(uni->a) << " b=" << format_double(uni->b);
    } else if (const auto* ex = d.as<Distribution::Exponential>()) {
      out << "exponential rate=" << format_double(ex->rate);
    } else {
      throw ProbeError(ErrorCode::kInvalidArgument, "mixtures cannot be written to a file");
    }
    out << '\n';
  }
  return out.str();
}

void write_instance_file(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ProbeError(ErrorCode::kInvalidArgument, "cannot write '" + path.string() + "'");
  }
  out << emit_instance(inst);
}

}  // namespace probemax
