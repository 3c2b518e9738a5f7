#pragma once

#include <Eigen/Dense>

namespace mpmsdem {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec2i = Eigen::Vector2i;

// 2D scalar cross products.
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
inline Vec2 cross2(double w, const Vec2& r) { return Vec2(-w * r.y(), w * r.x()); }
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

}  // namespace mpmsdem
