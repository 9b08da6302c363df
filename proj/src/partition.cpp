#include "strictq/partition.hpp"

#include "strictq/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>

namespace strictq {

namespace {

void validate(const std::vector<int>& parts)
{
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1)
            throw UsageError("partition parts must be positive");
        if (i > 0 && parts[i - 1] < parts[i])
            throw UsageError("partition parts must be weakly decreasing");
    }
}

// Fill `row` onwards with parts bounded by `cap`, using up `rest`.
void enumerate_rec(std::vector<int>& cur, int rows_left, int cap, int rest,
                   std::vector<Partition>& out)
{
    if (rest == 0) {
        out.push_back(Partition::from_padded(cur));
        return;
    }
    if (rows_left == 0)
        return;
    // Remaining rows can hold at most rows_left * cap.
    if (static_cast<long long>(rows_left) * cap < rest)
        return;
    for (int part = std::min(cap, rest); part >= 1; --part) {
        cur.push_back(part);
        enumerate_rec(cur, rows_left - 1, part, rest - part, out);
        cur.pop_back();
    }
}

} // namespace

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts))
{
}

Partition::Partition(std::vector<int> parts)
    : parts_(std::move(parts))
{
    validate(parts_);
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::from_padded(std::span<const int> parts)
{
    std::vector<int> v(parts.begin(), parts.end());
    while (!v.empty() && v.back() == 0)
        v.pop_back();
    return Partition(std::move(v));
}

Partition Partition::parse(std::string_view text)
{
    auto is_space = [](char c) { return c == ' ' || c == '\t'; };
    auto trim = [&](std::string_view s) {
        while (!s.empty() && is_space(s.front()))
            s.remove_prefix(1);
        while (!s.empty() && is_space(s.back()))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw UsageError("malformed partition '" + std::string(text) + "': expected [a,b,...]");
    std::string_view body = trim(text.substr(1, text.size() - 2));
    std::vector<int> parts;
    if (!body.empty()) {
        while (true) {
            auto comma = body.find(',');
            std::string_view tok = trim(body.substr(0, comma));
            int value = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
                throw UsageError("malformed partition '" + std::string(text) + "': bad part '" +
                                 std::string(tok) + "'");
            parts.push_back(value);
            if (comma == std::string_view::npos)
                break;
            body.remove_prefix(comma + 1);
        }
    }
    return Partition(std::move(parts));
}

Partition Partition::conjugate() const
{
    std::vector<int> conj(parts_.empty() ? 0 : parts_.front(), 0);
    for (int part : parts_)
        for (int j = 0; j < part; ++j)
            ++conj[j];
    return Partition(std::move(conj));
}

std::string Partition::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

std::ostream& operator<<(std::ostream& os, const Partition& p)
{
    return os << p.to_string();
}

Box::Box(int rows, int cols)
    : rows(rows)
    , cols(cols)
{
    if (rows < 1 || cols < 1)
        throw UsageError("box dimensions must be positive");
}

Partition rectangle(const Box& box)
{
    return Partition(std::vector<int>(box.rows, box.cols));
}

bool fits_in_box(const Partition& p, const Box& box)
{
    return p.length() <= static_cast<std::size_t>(box.rows) && p[0] <= box.cols;
}

Partition complement_in_box(const Partition& p, const Box& box)
{
    if (!fits_in_box(p, box))
        throw UsageError("partition " + p.to_string() + " does not fit in the " +
                         std::to_string(box.rows) + "x" + std::to_string(box.cols) + " box");
    std::vector<int> parts(box.rows);
    for (int i = 0; i < box.rows; ++i)
        parts[i] = box.cols - p[box.rows - 1 - i];
    return Partition::from_padded(parts);
}

Partition add(const Partition& p, const Partition& q)
{
    std::vector<int> parts(std::max(p.length(), q.length()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        parts[i] = p[i] + q[i];
    return Partition(std::move(parts));
}

std::vector<Partition> enumerate_in_box(const Box& box, int k)
{
    std::vector<Partition> out;
    if (k < 0 || k > box.area())
        return out;
    std::vector<int> cur;
    enumerate_rec(cur, box.rows, box.cols, k, out);
    return out;
}

std::vector<Partition> partitions_of(int n)
{
    if (n < 0)
        return {};
    if (n == 0)
        return {Partition{}};
    return enumerate_in_box(Box(n, n), n);
}

Partition two_row(int n, int k)
{
    if (k < 0 || 2 * k > n)
        throw UsageError("two-row shape (" + std::to_string(n - k) + "," + std::to_string(k) +
                         ") is not a partition");
    return Partition::from_padded(std::vector<int>{n - k, k});
}

bool contains(const Partition& outer, const Partition& inner)
{
    if (inner.length() > outer.length())
        return false;
    for (std::size_t i = 0; i < inner.length(); ++i)
        if (inner[i] > outer[i])
            return false;
    return true;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept
{
    std::size_t h = 1469598103934665603ull;
    for (int part : p.parts()) {
        h ^= static_cast<std::size_t>(part);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace strictq
