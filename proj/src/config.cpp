#include "iqfrl/config.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "iqfrl/text.hpp"

namespace iqfrl {

namespace {

using Setter = std::function<void(LearnerConfig &, const Token &, std::size_t)>;

Setter real(double LearnerConfig::*field) {
  return [field](LearnerConfig &c, const Token &t, std::size_t line) { c.*field = parseDouble(t, line); };
}

Setter integer(int LearnerConfig::*field) {
  return [field](LearnerConfig &c, const Token &t, std::size_t line) {
    c.*field = static_cast<int>(parseInteger(t, line));
  };
}

const std::map<std::string, Setter, std::less<>> &setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"me", real(&LearnerConfig::me)},
      {"dof_min", real(&LearnerConfig::dofMin)},
      {"alpha_f", real(&LearnerConfig::alphaF)},
      {"p_cross", real(&LearnerConfig::pCross)},
      {"pop_max", integer(&LearnerConfig::popMax)},
      {"it_min", integer(&LearnerConfig::itMin)},
      {"it_check", integer(&LearnerConfig::itCheck)},
      {"it_max", integer(&LearnerConfig::itMax)},
      {"sigma_bd", real(&LearnerConfig::sigmaBd)},
      {"sigma_v", real(&LearnerConfig::sigmaV)},
      {"p_min", real(&LearnerConfig::pMin)},
      {"seed",
       [](LearnerConfig &c, const Token &t, std::size_t line) {
         auto v = parseInteger(t, line);
         if (v < 0) throw ParseError("seed must be non-negative", line, t.column, std::string(t.text));
         c.seed = static_cast<std::uint64_t>(v);
       }},
      {"offspring_pairs", integer(&LearnerConfig::offspringPairs)},
      {"merge_extra_granularity", integer(&LearnerConfig::mergeExtraGranularity)},
      {"default_class", integer(&LearnerConfig::defaultClass)},
      {"max_epochs", integer(&LearnerConfig::maxEpochs)},
      {"mask_min_spread",
       [](LearnerConfig &c, const Token &t, std::size_t line) { c.mask.minSpread = parseDouble(t, line); }},
      {"max_granularity",
       [](LearnerConfig &c, const Token &t, std::size_t line) {
         c.mask.maxGranularity = static_cast<int>(parseInteger(t, line));
       }},
      {"similarity_grid",
       [](LearnerConfig &c, const Token &t, std::size_t line) {
         c.mask.similarity.gridPoints = static_cast<int>(parseInteger(t, line));
       }},
  };
  return table;
}

}  // namespace

void checkConfig(const LearnerConfig &c) {
  auto require = [](bool ok, const char *what) {
    if (!ok) throw std::invalid_argument(std::string("invalid learner configuration: ") + what);
  };
  require(c.me > 0.0, "me must be positive");
  require(c.dofMin >= 0.0 && c.dofMin < 1.0, "dof_min must lie in [0, 1)");
  require(c.alphaF >= 0.0 && c.alphaF <= 1.0, "alpha_f must lie in [0, 1]");
  require(c.pCross >= 0.0 && c.pCross <= 1.0, "p_cross must lie in [0, 1]");
  require(c.popMax >= 2, "pop_max must be at least 2");
  require(c.itMin >= 0 && c.itCheck >= 0 && c.itMax >= 1, "iteration limits must be non-negative, it_max >= 1");
  require(c.sigmaBd >= 0.0, "sigma_bd must be non-negative");
  require(c.sigmaV > 0.0 && c.sigmaV <= 1.0, "sigma_v must lie in (0, 1]");
  require(c.pMin >= 0.0 && c.pMin < 1.0, "p_min must lie in [0, 1)");
  require(c.offspringPairs >= 1, "offspring_pairs must be at least 1");
  require(c.mergeExtraGranularity >= 0, "merge_extra_granularity must be non-negative");
  require(c.defaultClass >= 1, "default_class must be at least 1");
  require(c.maxEpochs >= 0, "max_epochs must be non-negative");
  require(c.mask.minSpread > 0.0, "mask_min_spread must be positive");
  require(c.mask.maxGranularity >= 2, "max_granularity must be at least 2");
  require(c.mask.similarity.gridPoints >= 1, "similarity_grid must be positive");
}

LearnerConfig parseConfig(std::string_view text, LearnerConfig cfg) {
  for (const auto &line : meaningfulLines(text)) {
    auto eq = line.text.find('=');
    auto toks = tokenize(line.text.substr(0, eq == std::string_view::npos ? line.text.size() : eq));
    if (eq == std::string_view::npos || toks.size() != 1) {
      std::size_t col = toks.empty() ? 1 : toks.front().column;
      throw ParseError("expected 'key = value'", line.number, col, toks.empty() ? "" : std::string(toks[0].text));
    }
    auto it = setters().find(toks[0].text);
    if (it == setters().end()) {
      throw ParseError("unknown configuration key", line.number, toks[0].column, std::string(toks[0].text));
    }
    auto values = tokenize(line.text.substr(eq + 1));
    if (values.size() != 1) {
      throw ParseError("expected exactly one value", line.number, eq + 2, values.empty() ? "" : std::string(values[1].text));
    }
    Token value{values[0].text, values[0].column + eq + 1};
    it->second(cfg, value, line.number);
  }
  checkConfig(cfg);
  return cfg;
}

LearnerConfig loadConfig(const std::string &path) { return parseConfig(readFile(path)); }

std::string serializeConfig(const LearnerConfig &c) {
  std::ostringstream os;
  os << "me = " << formatDouble(c.me) << '\n'
     << "dof_min = " << formatDouble(c.dofMin) << '\n'
     << "alpha_f = " << formatDouble(c.alphaF) << '\n'
     << "p_cross = " << formatDouble(c.pCross) << '\n'
     << "pop_max = " << c.popMax << '\n'
     << "it_min = " << c.itMin << '\n'
     << "it_check = " << c.itCheck << '\n'
     << "it_max = " << c.itMax << '\n'
     << "sigma_bd = " << formatDouble(c.sigmaBd) << '\n'
     << "sigma_v = " << formatDouble(c.sigmaV) << '\n'
     << "p_min = " << formatDouble(c.pMin) << '\n'
     << "seed = " << c.seed << '\n'
     << "offspring_pairs = " << c.offspringPairs << '\n'
     << "merge_extra_granularity = " << c.mergeExtraGranularity << '\n'
     << "default_class = " << c.defaultClass << '\n'
     << "max_epochs = " << c.maxEpochs << '\n'
     << "mask_min_spread = " << formatDouble(c.mask.minSpread) << '\n'
     << "max_granularity = " << c.mask.maxGranularity << '\n'
     << "similarity_grid = " << c.mask.similarity.gridPoints << '\n';
  return os.str();
}

}  // namespace iqfrl
