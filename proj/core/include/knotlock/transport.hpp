#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace knotlock::transport {

/// "host:port" split; throws Error(InvalidInput) on malformed input.
struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  static Endpoint parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;
};

/// Owning, move-only byte stream over a file descriptor. Documents are framed
/// by their terminating `END` line; there is no length prefix.
class Stream {
 public:
  explicit Stream(int fd) : fd_(fd) {}
  ~Stream();
  Stream(Stream&& other) noexcept;
  Stream& operator=(Stream&& other) noexcept;
  Stream(const Stream&) = delete;
  Stream& operator=(const Stream&) = delete;

  /// Throws Error(Transport) on write failure.
  void write_document(std::string_view document);
  /// Reads through the next `END` line. Returns nullopt on clean EOF before
  /// any byte of a document; throws Error(Transport) on a partial document.
  std::optional<std::string> read_document();
  void shutdown_write();

  [[nodiscard]] int fd() const noexcept { return fd_; }

 private:
  std::optional<std::string> read_line();

  int fd_ = -1;
  std::string buffer_;
};

class Listener {
 public:
  /// Binds and listens; port 0 picks an ephemeral port.
  explicit Listener(const Endpoint& endpoint);
  ~Listener();
  Listener(Listener&& other) noexcept;
  Listener& operator=(Listener&&) = delete;
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  [[nodiscard]] std::uint16_t port() const noexcept { return port_; }
  Stream accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Throws Error(Transport) when the connection cannot be established.
Stream connect(const Endpoint& endpoint);

}  // namespace knotlock::transport
