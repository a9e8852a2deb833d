#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nozzle {

/// Absolute margin a strict inequality must clear to be certified.
inline constexpr double kDefaultStrictMargin = 1e-9;

/// One checked inequality `lhs <= rhs` (or `lhs < rhs` when strict), with slack = rhs - lhs.
/// Non-strict checks pass within 8 ulps of the larger operand.
///
/// Pointwise conditions are aggregated: lhs/rhs/slack belong to the worst sample, `where` names
/// it, and `samples` counts how many were evaluated.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool strict = false;
  bool pass = false;
  std::string where;
  std::size_t samples = 1;
};

class Certificate {
 public:
  explicit Certificate(std::string title = {}) : title_(std::move(title)) {}

  /// Records `lhs <= rhs`, or `lhs < rhs` with margin `strict_margin` when `strict`.
  Inequality& check(const std::string& name, double lhs, double rhs, bool strict = false,
                    double strict_margin = kDefaultStrictMargin, std::string where = {});

  /// Starts a pointwise inequality; feed samples with `sample()` on the returned index.
  std::size_t begin_pointwise(const std::string& name, bool strict = false,
                              double strict_margin = kDefaultStrictMargin);
  void sample(std::size_t index, double lhs, double rhs, const std::string& where);

  void add(const Certificate& other);
  void note(std::string text) { notes_.push_back(std::move(text)); }
  void set_conditional(bool c) { conditional_ = c; }

  bool pass() const;
  bool conditional() const { return conditional_; }
  const std::string& title() const { return title_; }
  const std::vector<Inequality>& items() const { return items_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const Inequality* find(const std::string& name) const;
  std::vector<const Inequality*> failures() const;
  /// Item with the smallest slack (nullptr when empty).
  const Inequality* worst() const;
  double min_slack() const;

  /// Human readable: one "PASS|FAIL name: lhs <= rhs (slack ...)" line per inequality.
  std::string text() const;
  /// Machine readable: one `key=value ...` record per inequality.
  std::string key_value() const;

 private:
  std::string title_;
  std::vector<Inequality> items_;
  std::vector<double> margins_;
  std::vector<std::string> notes_;
  bool conditional_ = false;
};

}  // namespace nozzle
