#include "loci/time.hpp"

#include <cstdio>

namespace loci {
namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  void skip() { ++pos_; }

  bool digits(int count, int& out) {
    out = 0;
    for (int i = 0; i < count; ++i) {
      if (done() || s_[pos_] < '0' || s_[pos_] > '9') return false;
      out = out * 10 + (s_[pos_++] - '0');
    }
    return true;
  }

  bool expect(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  Cursor c(trim(text));

  int y = 0, mo = 0, d = 0;
  if (!c.digits(4, y) || !c.expect('-') || !c.digits(2, mo) || !c.expect('-') || !c.digits(2, d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;

  int hh = 0, mm = 0, ss = 0;
  if (!c.done()) {
    if (c.peek() != 'T' && c.peek() != ' ' && c.peek() != 't') return std::nullopt;
    c.skip();
    if (!c.digits(2, hh) || !c.expect(':') || !c.digits(2, mm)) return std::nullopt;
    if (c.peek() == ':') {
      c.skip();
      if (!c.digits(2, ss)) return std::nullopt;
      if (c.peek() == '.' || c.peek() == ',') {
        c.skip();
        if (c.peek() < '0' || c.peek() > '9') return std::nullopt;
        while (c.peek() >= '0' && c.peek() <= '9') c.skip();
      }
    }
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

  int offset_minutes = 0;
  if (!c.done()) {
    const char z = c.peek();
    if (z == 'Z' || z == 'z') {
      c.skip();
    } else if (z == '+' || z == '-') {
      c.skip();
      int oh = 0, om = 0;
      if (!c.digits(2, oh)) return std::nullopt;
      if (c.peek() == ':') c.skip();
      if (!c.done() && !c.digits(2, om)) return std::nullopt;
      if (oh > 23 || om > 59) return std::nullopt;
      offset_minutes = (oh * 60 + om) * (z == '-' ? -1 : 1);
    } else {
      return std::nullopt;
    }
  }
  if (!c.done()) return std::nullopt;

  const sys_seconds local = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
  return local - minutes{offset_minutes};
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::string format_date(Timestamp t) { return format_timestamp(t).substr(0, 10); }

}  // namespace loci
