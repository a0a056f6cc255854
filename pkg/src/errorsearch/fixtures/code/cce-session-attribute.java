protected void doGet(HttpServletRequest request, HttpServletResponse response)
        throws ServletException, IOException {
    Integer userId = (Integer) request.getSession().getAttribute("userId");
    User user = userDao.find(userId);
    request.setAttribute("user", user);
    request.getRequestDispatcher("/profile.jsp").forward(request, response);
}
