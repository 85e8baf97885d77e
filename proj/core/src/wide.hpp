#pragma once

namespace inflearn {
__extension__ typedef unsigned __int128 u128;
}  // namespace inflearn
