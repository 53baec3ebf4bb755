#include "sextic/hvpt.hpp"

#include <nlohmann/json.hpp>

#include <utility>

#include "sextic/errors.hpp"

namespace sextic {

const char* to_string(SeriesQuantity q) {
  return q == SeriesQuantity::energy ? "energy" : "moment";
}

MomentTable::MomentTable(int state_index, int max_order, std::vector<std::vector<Rational>> rows)
    : state_index_(state_index), max_order_(max_order), rows_(std::move(rows)) {}

int MomentTable::cap(int p) const { return 3 + (max_order_ - p); }

const Rational& MomentTable::moment(int N, int p) const {
  if (p < 0 || p > max_order_ || N < 0 || N > cap(p))
    throw DomainError("moment U_" + std::to_string(N) + "^(" + std::to_string(p) +
                      ") lies outside the stored cone (max order " +
                      std::to_string(max_order_) + ")");
  return rows_[static_cast<size_t>(p)][static_cast<size_t>(N)];
}

int MomentTable::max_order_for(int N) const {
  if (N < 0 || N > cap(0))
    throw DomainError("moment power " + std::to_string(N) + " not present in table");
  return N <= 3 ? max_order_ : max_order_ - (N - 3);
}

PerturbationSeries MomentTable::moment_series(int N) const {
  const int top = max_order_for(N);
  PerturbationSeries s;
  s.state_index = state_index_;
  s.quantity = SeriesQuantity::moment;
  s.moment_power = N;
  s.coefficients.reserve(static_cast<size_t>(top) + 1);
  for (int p = 0; p <= top; ++p) s.coefficients.push_back(rows_[p][N]);
  return s;
}

HvptResult generate_series(int n, int P, const HvptOptions& options) {
  if (n < 0) throw UsageError("state index must be >= 0");
  if (P < 0) throw UsageError("perturbation order must be >= 0");
  if (P > options.hard_max_order)
    throw ResourceError("requested order " + std::to_string(P) +
                        " exceeds the configured maximum of " +
                        std::to_string(options.hard_max_order));

  // Hypervirial relation for V = v1 x^2 + v2 x^4 + v3 x^6 with v1 = 1 - 12L,
  // v2 = 8L, v3 = 16L^2, expanded order by order in L and solved for the top
  // moment (M = N+1 relabeling of the N-indexed relation):
  //
  //   4M * U_M^(p) = 2(2M-1) * sum_{q<=p} E^(q) U_{M-1}^(p-q)
  //                + (M-1)(2M-1)(2M-3) * U_{M-2}^(p)
  //                + 48M * U_M^(p-1) - 16(2M+1) * U_{M+1}^(p-1)
  //                - 32(2M+2) * U_{M+2}^(p-2)
  //
  // with U_0 = (1, 0, 0, ...), E^(0) = 2n+1; Hellmann-Feynman closes each
  // order: p E^(p) = -12 U_1^(p-1) + 8 U_2^(p-1) + 32 U_3^(p-2).
  //
  // This scheme is gated by the golden-coefficient tests; do not modify one
  // without the other. All integer factors are computed in long: the cubic
  // coefficient overflows 32-bit near M ~ 815, well inside the order budget.
  std::vector<Rational> energy(static_cast<size_t>(P) + 1);
  energy[0] = 2 * n + 1;
  std::vector<std::vector<Rational>> rows(static_cast<size_t>(P) + 1);
  const auto cap = [P](int p) { return 3 + (P - p); };

  for (int p = 0; p <= P; ++p) {
    rows[p].assign(static_cast<size_t>(cap(p)) + 1, Rational(0));
    rows[p][0] = (p == 0) ? 1 : 0;
    if (p >= 1) {
      Rational acc = -12 * rows[p - 1][1] + 8 * rows[p - 1][2];
      if (p >= 2) acc += 32 * rows[p - 2][3];
      acc /= p;
      energy[p] = std::move(acc);
    }
    for (int M = 1; M <= cap(p); ++M) {
      Rational conv;
      for (int q = 0; q <= p; ++q) {
        if (sgn(energy[q]) == 0) continue;  // n = 0 collapses this to q = 0
        const Rational& u = rows[p - q][M - 1];
        if (sgn(u) == 0) continue;
        conv += energy[q] * u;
      }
      Rational acc = (2L * (2L * M - 1)) * conv;
      if (M >= 2 && sgn(rows[p][M - 2]) != 0)
        acc += ((static_cast<long>(M) - 1) * (2L * M - 1) * (2L * M - 3)) * rows[p][M - 2];
      if (p >= 1) {
        if (sgn(rows[p - 1][M]) != 0) acc += (48L * M) * rows[p - 1][M];
        if (sgn(rows[p - 1][M + 1]) != 0) acc -= (16L * (2L * M + 1)) * rows[p - 1][M + 1];
      }
      if (p >= 2 && sgn(rows[p - 2][M + 2]) != 0)
        acc -= (32L * (2L * M + 2)) * rows[p - 2][M + 2];
      acc /= 4L * M;
      rows[p][M] = std::move(acc);
    }
  }

  HvptResult result;
  result.energy.state_index = n;
  result.energy.quantity = SeriesQuantity::energy;
  result.energy.moment_power = 0;
  result.energy.coefficients = std::move(energy);
  result.moments = MomentTable(n, P, std::move(rows));
  return result;
}

double evaluate_partial_sum(const PerturbationSeries& series, double lambda, int order) {
  if (order < 0 || order > series.max_order())
    throw UsageError("partial-sum order " + std::to_string(order) +
                     " outside series range 0.." + std::to_string(series.max_order()));
  double s = 0.0;
  for (int p = order; p >= 0; --p) s = s * lambda + to_double(series.coefficients[p]);
  return s;
}

std::string export_coefficients(const PerturbationSeries& series, TextFormat format) {
  if (format == TextFormat::csv) {
    std::string out;
    for (size_t p = 0; p < series.coefficients.size(); ++p) {
      if (p) out += ',';
      out += std::to_string(p) + ":" + to_fraction_string(series.coefficients[p]);
    }
    return out;
  }
  nlohmann::json j;
  j["state_index"] = series.state_index;
  j["quantity"] = to_string(series.quantity);
  j["moment_power"] = series.moment_power;
  auto& arr = j["coefficients"] = nlohmann::json::array();
  for (const Rational& c : series.coefficients) arr.push_back(to_fraction_string(c));
  return j.dump();
}

PerturbationSeries parse_coefficients(const std::string& text, TextFormat format) {
  PerturbationSeries series;
  if (format == TextFormat::csv) {
    // "0:1/2,1:-3/1": indices must be the consecutive orders 0..K.
    size_t pos = 0, expected = 0;
    while (pos < text.size()) {
      size_t comma = text.find(',', pos);
      if (comma == std::string::npos) comma = text.size();
      const std::string item = text.substr(pos, comma - pos);
      const size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw UsageError("malformed coefficient item '" + item + "' (expected p:num/den)");
      if (std::to_string(expected) != item.substr(0, colon))
        throw UsageError("coefficient orders must run 0,1,2,... (got '" + item + "')");
      series.coefficients.push_back(parse_fraction(item.substr(colon + 1)));
      ++expected;
      pos = comma + 1;
    }
    if (series.coefficients.empty()) throw UsageError("empty coefficient list");
    return series;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid series JSON: ") + e.what());
  }
  try {
    series.state_index = j.at("state_index").get<int>();
    const std::string q = j.at("quantity").get<std::string>();
    if (q == "energy")
      series.quantity = SeriesQuantity::energy;
    else if (q == "moment")
      series.quantity = SeriesQuantity::moment;
    else
      throw UsageError("unknown series quantity '" + q + "'");
    series.moment_power = j.at("moment_power").get<int>();
    for (const auto& c : j.at("coefficients"))
      series.coefficients.push_back(parse_fraction(c.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("series JSON missing fields: ") + e.what());
  }
  if (series.coefficients.empty()) throw UsageError("empty coefficient list");
  return series;
}

}  // namespace sextic
