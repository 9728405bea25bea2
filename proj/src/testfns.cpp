#include "bobench/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bobench/errors.hpp"

namespace bobench {

DomainBox::DomainBox(std::vector<double> lower, std::vector<double> upper,
                     std::set<std::size_t> integer_dims)
    : lower_(std::move(lower)), upper_(std::move(upper)), integer_dims_(std::move(integer_dims)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("DomainBox: bounds must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw std::invalid_argument("DomainBox: lower bound must be below upper bound");
    }
  }
  for (std::size_t i : integer_dims_) {
    if (i >= lower_.size()) throw std::invalid_argument("DomainBox: integer dimension out of range");
    if (std::floor(upper_[i]) - std::ceil(lower_[i]) < 1.0) {
      throw std::invalid_argument("DomainBox: integer dimension holds fewer than two integers");
    }
  }
}

DomainBox DomainBox::cube(std::size_t d, double lo, double hi, std::set<std::size_t> integer_dims) {
  return DomainBox(std::vector<double>(d, lo), std::vector<double>(d, hi), std::move(integer_dims));
}

double DomainBox::diagonal() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += (upper_[i] - lower_[i]) * (upper_[i] - lower_[i]);
  return std::sqrt(s);
}

bool DomainBox::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

std::string_view to_string(Attribute a) {
  switch (a) {
    case Attribute::Noisy: return "Noisy";
    case Attribute::Oscillatory: return "Oscillatory";
    case Attribute::Unimodal: return "Unimodal";
    case Attribute::BoundaryOptimum: return "BoundaryOptimum";
    case Attribute::MixedInteger: return "MixedInteger";
    case Attribute::DiscreteValued: return "DiscreteValued";
    case Attribute::MostlyBoring: return "MostlyBoring";
    case Attribute::Nonsmooth: return "Nonsmooth";
  }
  return "?";
}

std::optional<Attribute> parse_attribute(std::string_view name) {
  for (Attribute a : kAllAttributes) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

Evaluation evaluate(const TestFunction& fn, std::span<const double> x, Rng& rng) {
  if (x.size() != fn.dim()) {
    throw DomainError(fn.id + ": point has wrong dimension");
  }
  if (!fn.domain.contains(x)) {
    throw DomainError(fn.id + ": point outside domain");
  }
  for (std::size_t i : fn.domain.integer_dims()) {
    if (x[i] != std::round(x[i])) {
      throw ConstraintError(fn.id + ": non-integer value in integer dimension " + std::to_string(i));
    }
  }
  Evaluation e;
  e.x.assign(x.begin(), x.end());
  e.true_value = fn.objective(x);
  e.observed_value = e.true_value;
  if (fn.noise_level > 0.0) {
    e.noise_draw = rng.normal();
    e.observed_value = (1.0 + fn.noise_level * e.noise_draw) * e.true_value;
  }
  return e;
}

std::vector<double> round_to_domain(const DomainBox& domain, std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size() && i < domain.dim(); ++i) {
    double lo = domain.lower()[i];
    double hi = domain.upper()[i];
    double v = std::clamp(out[i], lo, hi);
    if (domain.is_integer(i)) {
      v = std::clamp(std::round(v), std::ceil(lo), std::floor(hi));
    }
    out[i] = v;
  }
  return out;
}

bool in_bucket(std::size_t d, DimensionBucket bucket) {
  switch (bucket) {
    case DimensionBucket::Any: return true;
    case DimensionBucket::Two: return d == 2;
    case DimensionBucket::ThreeToFive: return d >= 3 && d <= 5;
    case DimensionBucket::SixToNine: return d >= 6 && d <= 9;
    case DimensionBucket::TenPlus: return d >= 10;
  }
  return false;
}

DimensionBucket bucket_of(std::size_t d) {
  if (d >= 10) return DimensionBucket::TenPlus;
  if (d >= 6) return DimensionBucket::SixToNine;
  if (d >= 3) return DimensionBucket::ThreeToFive;
  // d == 1 is lumped with the smallest bucket.
  return DimensionBucket::Two;
}

std::string_view to_string(DimensionBucket b) {
  switch (b) {
    case DimensionBucket::Any: return "any";
    case DimensionBucket::Two: return "d=2";
    case DimensionBucket::ThreeToFive: return "3<=d<=5";
    case DimensionBucket::SixToNine: return "6<=d<=9";
    case DimensionBucket::TenPlus: return "d>=10";
  }
  return "?";
}

Registry::Registry(std::vector<TestFunction> functions) : functions_(std::move(functions)) {
  std::sort(functions_.begin(), functions_.end(),
            [](const TestFunction& a, const TestFunction& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < functions_.size(); ++i) {
    if (functions_[i].id == functions_[i - 1].id) {
      throw std::invalid_argument("Registry: duplicate function id " + functions_[i].id);
    }
  }
  for (const auto& f : functions_) {
    if ((f.noise_level > 0.0) != f.has(Attribute::Noisy)) {
      throw std::invalid_argument("Registry: Noisy tag disagrees with noise level for " + f.id);
    }
  }
}

const TestFunction* Registry::find(std::string_view id) const {
  auto it = std::lower_bound(functions_.begin(), functions_.end(), id,
                             [](const TestFunction& f, std::string_view key) { return f.id < key; });
  if (it == functions_.end() || it->id != id) return nullptr;
  return &*it;
}

const TestFunction& Registry::at(std::string_view id) const {
  const TestFunction* f = find(id);
  if (f == nullptr) throw std::invalid_argument("unknown function id: " + std::string(id));
  return *f;
}

std::vector<const TestFunction*> Registry::query(const RegistryFilter& filter) const {
  std::vector<const TestFunction*> out;
  for (const auto& f : functions_) {
    if (!in_bucket(f.dim(), filter.bucket)) continue;
    bool ok = std::all_of(filter.attributes.begin(), filter.attributes.end(),
                          [&](Attribute a) { return f.has(a); });
    if (ok) out.push_back(&f);
  }
  return out;
}

namespace {

std::string format_bounds(const DomainBox& box) {
  std::ostringstream os;
  os << std::setprecision(6);
  bool uniform = true;
  for (std::size_t i = 1; i < box.dim(); ++i) {
    uniform = uniform && box.lower()[i] == box.lower()[0] && box.upper()[i] == box.upper()[0];
  }
  if (uniform) {
    os << '[' << box.lower()[0] << ',' << box.upper()[0] << "]^" << box.dim();
  } else {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      if (i) os << 'x';
      os << '[' << box.lower()[i] << ',' << box.upper()[i] << ']';
    }
  }
  if (!box.integer_dims().empty()) {
    os << " int{";
    bool first = true;
    for (std::size_t i : box.integer_dims()) {
      os << (first ? "" : ",") << i;
      first = false;
    }
    os << '}';
  }
  return os.str();
}

}  // namespace

std::string Registry::manifest() const {
  std::ostringstream os;
  os << std::left << std::setw(24) << "id" << std::setw(4) << "d" << std::setw(28) << "bounds"
     << std::setw(42) << "attributes" << std::setw(8) << "delta" << std::setw(12) << "f_lb"
     << "f_opt" << '\n';
  for (const auto& f : functions_) {
    std::string attrs;
    for (Attribute a : f.attributes) {
      if (!attrs.empty()) attrs += ',';
      attrs += to_string(a);
    }
    std::ostringstream lb, opt, delta;
    lb << std::setprecision(8) << f.f_lb;
    delta << f.noise_level;
    if (f.f_opt) {
      opt << std::setprecision(8) << *f.f_opt;
    } else {
      opt << '-';
    }
    os << std::left << std::setw(24) << f.id << std::setw(4) << f.dim() << std::setw(28)
       << format_bounds(f.domain) << std::setw(42) << attrs << std::setw(8) << delta.str()
       << std::setw(12) << lb.str() << opt.str() << '\n';
  }
  return os.str();
}

}  // namespace bobench
