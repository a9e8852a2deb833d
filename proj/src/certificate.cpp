#include "nozzle/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nozzle {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Non-strict comparisons tolerate a few ulps of the operands, so exact equalities survive
// rounding; strict ones must clear `margin`.
bool holds(double lhs, double rhs, bool strict, double margin) {
  const double slack = rhs - lhs;
  if (std::isnan(slack)) return false;
  if (strict) return slack >= margin;
  return slack >= -8.0 * std::numeric_limits<double>::epsilon() *
                      std::max(std::abs(lhs), std::abs(rhs));
}

}  // namespace

Inequality& Certificate::check(const std::string& name, double lhs, double rhs, bool strict,
                               double strict_margin, std::string where) {
  Inequality q;
  q.name = name;
  q.lhs = lhs;
  q.rhs = rhs;
  q.slack = rhs - lhs;
  q.strict = strict;
  q.pass = holds(lhs, rhs, strict, strict_margin);
  q.where = std::move(where);
  items_.push_back(std::move(q));
  margins_.push_back(strict_margin);
  return items_.back();
}

std::size_t Certificate::begin_pointwise(const std::string& name, bool strict,
                                         double strict_margin) {
  Inequality q;
  q.name = name;
  q.strict = strict;
  q.slack = std::numeric_limits<double>::infinity();
  q.pass = true;
  q.samples = 0;
  items_.push_back(std::move(q));
  margins_.push_back(strict_margin);
  return items_.size() - 1;
}

void Certificate::sample(std::size_t index, double lhs, double rhs, const std::string& where) {
  Inequality& q = items_.at(index);
  const double slack = rhs - lhs;
  ++q.samples;
  const bool worse = std::isnan(slack) ? !std::isnan(q.slack) : slack < q.slack;
  if (q.samples == 1 || worse) {
    q.lhs = lhs;
    q.rhs = rhs;
    q.slack = slack;
    q.where = where;
  }
  if (!holds(lhs, rhs, q.strict, margins_[index])) q.pass = false;
}

void Certificate::add(const Certificate& other) {
  for (std::size_t i = 0; i < other.items_.size(); ++i) {
    items_.push_back(other.items_[i]);
    margins_.push_back(other.margins_[i]);
  }
  for (const auto& n : other.notes_) notes_.push_back(n);
  conditional_ = conditional_ || other.conditional_;
}

bool Certificate::pass() const {
  for (const auto& q : items_) {
    if (!q.pass) return false;
  }
  return true;
}

const Inequality* Certificate::find(const std::string& name) const {
  for (const auto& q : items_) {
    if (q.name == name) return &q;
  }
  return nullptr;
}

std::vector<const Inequality*> Certificate::failures() const {
  std::vector<const Inequality*> out;
  for (const auto& q : items_) {
    if (!q.pass) out.push_back(&q);
  }
  return out;
}

const Inequality* Certificate::worst() const {
  const Inequality* w = nullptr;
  for (const auto& q : items_) {
    if (w == nullptr || q.slack < w->slack || std::isnan(q.slack)) w = &q;
  }
  return w;
}

double Certificate::min_slack() const {
  const Inequality* w = worst();
  return w ? w->slack : std::numeric_limits<double>::infinity();
}

std::string Certificate::text() const {
  std::string out;
  if (!title_.empty()) out += "# " + title_ + (conditional_ ? " (conditional)" : "") + "\n";
  for (const auto& q : items_) {
    out += q.pass ? "PASS " : "FAIL ";
    out += q.name + ": " + num(q.lhs) + (q.strict ? " < " : " <= ") + num(q.rhs) +
           " (slack " + num(q.slack);
    if (q.samples > 1) out += ", worst of " + std::to_string(q.samples) + " samples";
    if (!q.where.empty()) out += ", at " + q.where;
    out += ")\n";
  }
  for (const auto& n : notes_) out += "note: " + n + "\n";
  return out;
}

std::string Certificate::key_value() const {
  std::string out;
  for (const auto& q : items_) {
    out += "certificate=" + (title_.empty() ? std::string("-") : title_) + " name=" + q.name +
           " lhs=" + num(q.lhs) + " rhs=" + num(q.rhs) + " slack=" + num(q.slack) +
           " strict=" + (q.strict ? "1" : "0") + " pass=" + (q.pass ? "1" : "0") +
           " samples=" + std::to_string(q.samples);
    if (!q.where.empty()) out += " where=" + q.where;
    out += "\n";
  }
  return out;
}

}  // namespace nozzle
