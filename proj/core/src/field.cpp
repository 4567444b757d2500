#include "gapclique/field.hpp"

#include <algorithm>

namespace gapclique {

bool is_prime(std::uint32_t m) noexcept {
    if (m < 2) return false;
    for (std::uint64_t f = 2; f * f <= m; ++f) {
        if (m % f == 0) return false;
    }
    return true;
}

FieldSpec::FieldSpec(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) {
        throw std::invalid_argument("field order must be prime, got " + std::to_string(q));
    }
}

FieldElem FieldSpec::elem(std::uint32_t value) const {
    return FieldElem(value, *this);
}

FieldElem FieldSpec::reduce(std::int64_t value) const {
    std::int64_t r = value % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    return FieldElem(static_cast<std::uint32_t>(r), *this);
}

FieldElem::FieldElem(std::uint32_t value, FieldSpec spec) : value_(value), spec_(spec) {
    if (value >= spec.q()) {
        throw std::invalid_argument("field element " + std::to_string(value) +
                                    " out of range for F_" + std::to_string(spec.q()));
    }
}

namespace {

void require_same_field(FieldSpec a, FieldSpec b) {
    if (a != b) {
        throw spec_mismatch_error("operands live over F_" + std::to_string(a.q()) +
                                  " and F_" + std::to_string(b.q()));
    }
}

}  // namespace

FieldElem FieldElem::operator-() const {
    std::uint32_t q = spec_.q();
    return FieldElem(value_ == 0 ? 0 : q - value_, spec_);
}

FieldElem FieldElem::inv() const {
    if (value_ == 0) {
        throw division_by_zero_error("inverse of 0 in F_" + std::to_string(spec_.q()));
    }
    // extended Euclid on (value, q); q prime so the gcd is 1
    std::int64_t a = value_, m = spec_.q();
    std::int64_t x0 = 1, x1 = 0;
    while (m != 0) {
        std::int64_t t = a / m;
        a -= t * m;
        std::swap(a, m);
        x0 -= t * x1;
        std::swap(x0, x1);
    }
    return spec_.reduce(x0);
}

FieldElem operator+(FieldElem a, FieldElem b) {
    require_same_field(a.spec_, b.spec_);
    std::uint32_t q = a.spec_.q();
    std::uint64_t s = static_cast<std::uint64_t>(a.value_) + b.value_;
    return FieldElem(static_cast<std::uint32_t>(s >= q ? s - q : s), a.spec_);
}

FieldElem operator-(FieldElem a, FieldElem b) {
    return a + (-b);
}

FieldElem operator*(FieldElem a, FieldElem b) {
    require_same_field(a.spec_, b.spec_);
    std::uint64_t p = static_cast<std::uint64_t>(a.value_) * b.value_;
    return FieldElem(static_cast<std::uint32_t>(p % a.spec_.q()), a.spec_);
}

FVector::FVector(std::vector<std::uint32_t> coords, FieldSpec spec)
    : coords_(std::move(coords)), spec_(spec) {
    for (std::uint32_t c : coords_) {
        if (c >= spec_.q()) {
            throw std::invalid_argument("coordinate " + std::to_string(c) +
                                        " out of range for F_" + std::to_string(spec_.q()));
        }
    }
}

FVector FVector::zero(std::size_t dim, FieldSpec spec) {
    return FVector(std::vector<std::uint32_t>(dim, 0), spec);
}

FVector FVector::unit(std::size_t i, std::size_t dim, FieldSpec spec) {
    if (i < 1 || i > dim) {
        throw dimension_error("unit vector index " + std::to_string(i) +
                              " outside [1, " + std::to_string(dim) + "]");
    }
    FVector v = zero(dim, spec);
    v.coords_[i - 1] = 1;
    return v;
}

bool FVector::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](std::uint32_t c) { return c == 0; });
}

std::uint32_t FVector::at(std::size_t i) const {
    if (i < 1 || i > coords_.size()) {
        throw dimension_error("coordinate index " + std::to_string(i) +
                              " outside [1, " + std::to_string(coords_.size()) + "]");
    }
    return coords_[i - 1];
}

FieldElem FVector::elem(std::size_t i) const {
    return FieldElem(at(i), spec_);
}

void FVector::set(std::size_t i, FieldElem v) {
    require_same_field(spec_, v.spec());
    set(i, v.value());
}

void FVector::set(std::size_t i, std::uint32_t v) {
    if (i < 1 || i > coords_.size()) {
        throw dimension_error("coordinate index " + std::to_string(i) +
                              " outside [1, " + std::to_string(coords_.size()) + "]");
    }
    if (v >= spec_.q()) {
        throw std::invalid_argument("coordinate " + std::to_string(v) +
                                    " out of range for F_" + std::to_string(spec_.q()));
    }
    coords_[i - 1] = v;
}

namespace {

void require_same_shape(const FVector& a, const FVector& b) {
    require_same_field(a.spec(), b.spec());
    if (a.dim() != b.dim()) {
        throw dimension_error("vector dimensions " + std::to_string(a.dim()) + " and " +
                              std::to_string(b.dim()) + " disagree");
    }
}

}  // namespace

FVector FVector::operator-() const {
    std::vector<std::uint32_t> out(coords_.size());
    std::uint32_t q = spec_.q();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        out[i] = coords_[i] == 0 ? 0 : q - coords_[i];
    }
    return FVector(std::move(out), spec_);
}

FVector operator+(const FVector& a, const FVector& b) {
    require_same_shape(a, b);
    std::uint32_t q = a.spec_.q();
    std::vector<std::uint32_t> out(a.coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(a.coords_[i]) + b.coords_[i];
        out[i] = static_cast<std::uint32_t>(s >= q ? s - q : s);
    }
    return FVector(std::move(out), a.spec_);
}

FVector operator-(const FVector& a, const FVector& b) {
    return a + (-b);
}

FVector operator*(FieldElem s, const FVector& v) {
    require_same_field(s.spec(), v.spec_);
    std::uint32_t q = v.spec_.q();
    std::vector<std::uint32_t> out(v.coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(s.value()) * v.coords_[i] % q);
    }
    return FVector(std::move(out), v.spec_);
}

std::strong_ordering FVector::operator<=>(const FVector& other) const noexcept {
    if (auto c = spec_.q() <=> other.spec_.q(); c != 0) return c;
    if (auto c = coords_.size() <=> other.coords_.size(); c != 0) return c;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (auto c = coords_[i] <=> other.coords_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string FVector::to_digits() const {
    std::string out;
    if (spec_.q() <= 10) {
        out.reserve(coords_.size());
        for (std::uint32_t c : coords_) {
            out.push_back(static_cast<char>('0' + c));
        }
    } else {
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i > 0) out.push_back('.');
            out += std::to_string(coords_[i]);
        }
    }
    return out;
}

FVector FVector::from_digits(std::string_view digits, std::size_t dim, FieldSpec spec) {
    std::vector<std::uint32_t> coords;
    coords.reserve(dim);
    if (spec.q() <= 10) {
        for (char ch : digits) {
            if (ch < '0' || ch > '9') {
                throw std::invalid_argument("bad digit '" + std::string(1, ch) + "' in vector string");
            }
            coords.push_back(static_cast<std::uint32_t>(ch - '0'));
        }
    } else if (!digits.empty()) {
        std::size_t pos = 0;
        while (true) {
            std::size_t dot = digits.find('.', pos);
            std::string part(digits.substr(pos, dot == std::string_view::npos ? dot : dot - pos));
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument("bad coordinate '" + part + "' in vector string");
            }
            coords.push_back(static_cast<std::uint32_t>(std::stoul(part)));
            if (dot == std::string_view::npos) break;
            pos = dot + 1;
        }
    }
    if (coords.size() != dim) {
        throw dimension_error("vector string encodes " + std::to_string(coords.size()) +
                              " coordinates, expected " + std::to_string(dim));
    }
    return FVector(std::move(coords), spec);  // range check happens in the constructor
}

std::uint64_t FVector::index() const {
    std::uint64_t idx = 0;
    std::uint64_t q = spec_.q();
    for (std::uint32_t c : coords_) {
        if (idx > (UINT64_MAX - c) / q) {
            throw std::overflow_error("vector index exceeds 64 bits");
        }
        idx = idx * q + c;
    }
    return idx;
}

FVector FVector::from_index(std::uint64_t index, std::size_t dim, FieldSpec spec) {
    std::vector<std::uint32_t> coords(dim, 0);
    std::uint64_t q = spec.q();
    for (std::size_t i = dim; i-- > 0;) {
        coords[i] = static_cast<std::uint32_t>(index % q);
        index /= q;
    }
    if (index != 0) {
        throw std::invalid_argument("index does not fit in " + std::to_string(dim) + " base-" +
                                    std::to_string(spec.q()) + " digits");
    }
    return FVector(std::move(coords), spec);
}

bool FVector::increment() noexcept {
    std::uint32_t top = spec_.q() - 1;
    for (std::size_t i = coords_.size(); i-- > 0;) {
        if (coords_[i] < top) {
            ++coords_[i];
            return true;
        }
        coords_[i] = 0;
    }
    return false;  // wrapped to zero (also the dim == 0 case)
}

std::vector<std::size_t> diff(const FVector& a, const FVector& b) {
    require_same_shape(a, b);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.coords()[i] != b.coords()[i]) out.push_back(i + 1);
    }
    return out;
}

std::size_t hamming(const FVector& a, const FVector& b) {
    require_same_shape(a, b);
    std::size_t h = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.coords()[i] != b.coords()[i]) ++h;
    }
    return h;
}

}  // namespace gapclique
