public static double average(int[] scores) {
    int sum = 0;
    for (int i = 0; i <= scores.length; i++) {
        sum += scores[i];
    }
    return (double) sum / scores.length;
}
